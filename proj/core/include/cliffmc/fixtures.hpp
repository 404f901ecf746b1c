#pragma once

#include <string>
#include <vector>

#include "cliffmc/fields.hpp"

namespace cliffmc {

struct Fixture {
  std::string name;
  int dim = 0;
  CliffordField field;
  bool expect_monogenic = false;
  std::string note;
};

// Named test fields addressable from the CLI.  Monogenicity flags are
// expectations, re-verified numerically by monogenicity_check.
const std::vector<Fixture>& fixture_registry();

const Fixture& find_fixture(const std::string& name);

}  // namespace cliffmc
