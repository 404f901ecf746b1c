#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>

#include "cliffmc/process.hpp"
#include "cliffmc/serialize.hpp"

using namespace cliffmc;

TEST_CASE("zero coefficients are omitted; keys are decimal bitmasks") {
  Multivector m(2);
  m[0] = 1.5;
  m[3] = -2.0;  // e_1 e_2
  const auto j = nlohmann::json::parse(to_json(m));
  CHECK(j["dim"] == 2);
  CHECK(j["coeffs"].size() == 2);
  CHECK(j["coeffs"]["0"] == 1.5);
  CHECK(j["coeffs"]["3"] == -2.0);
  CHECK(!j["coeffs"].contains("1"));
}

TEST_CASE("round trip is bit-exact") {
  Multivector m(3);
  m[0] = 0.1;
  m[1] = -1.0 / 3.0;
  m[5] = 1e-17;
  m[7] = 12345.6789;
  const Multivector back = multivector_from_json(to_json(m));
  REQUIRE(back.dim() == 3);
  for (std::size_t c = 0; c < m.size(); ++c)
    CHECK(back[static_cast<BladeIndex>(c)] == m[static_cast<BladeIndex>(c)]);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(multivector_from_json("{\"dim\": 2, \"coeffs\": {\"4\": 1.0}}"),
                  std::invalid_argument);
  CHECK_THROWS(multivector_from_json("not json"));
  CHECK_THROWS(multivector_from_json("{\"coeffs\": {}}"));
}

TEST_CASE("path CSV header and row count") {
  const ProcessPath p = sample_bm(PathConfig(2, ParaVector(2), 1.0, 4, 1));
  const std::string csv = path_to_csv(p);
  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "t,x_0,x_1,x_2");
  std::size_t rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);
}
