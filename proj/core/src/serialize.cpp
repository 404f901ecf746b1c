#include "cliffmc/serialize.hpp"

#include <sstream>

#include <json.hpp>

namespace cliffmc {

using nlohmann::json;

std::string to_json(const Multivector& m) {
  json coeffs = json::object();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double v = m[static_cast<BladeIndex>(i)];
    if (v != 0.0) coeffs[std::to_string(i)] = v;
  }
  return json{{"dim", m.dim()}, {"coeffs", coeffs}}.dump();
}

Multivector multivector_from_json(const std::string& text) {
  const json j = json::parse(text);
  Multivector m(j.at("dim").get<int>());
  for (const auto& [key, value] : j.at("coeffs").items()) {
    const auto blade = static_cast<BladeIndex>(std::stoul(key));
    if (blade >= m.size()) throw std::invalid_argument("multivector_from_json: blade " + key +
                                                       " out of range");
    m[blade] = value.get<double>();
  }
  return m;
}

std::string to_json(const MCEstimate& e) {
  return json{{"mean", e.mean}, {"stderr", e.stderr_}, {"count", e.count}}.dump();
}

std::string to_json(const MonogenicityReport& r) {
  return json{{"max_residual", r.max_residual},
              {"sample_points", r.sample_points},
              {"step", r.step},
              {"tol", r.tol},
              {"pass", r.pass}}
      .dump();
}

std::string to_json(const ItoReport& r) {
  return json{{"lhs", json::parse(to_json(r.lhs))},
              {"rhs", json::parse(to_json(r.rhs))},
              {"residual_norm", r.residual_norm},
              {"n_steps", r.n_steps},
              {"dt", r.dt}}
      .dump();
}

std::string path_to_csv(const ProcessPath& p) {
  std::ostringstream os;
  os.precision(17);
  os << "t";
  for (int i = 0; i <= p.dim(); ++i) os << ",x_" << i;
  os << "\n";
  for (std::size_t k = 0; k < p.times.size(); ++k) {
    os << p.times[k];
    for (int i = 0; i <= p.dim(); ++i) os << "," << p.states[k][i];
    os << "\n";
  }
  return os.str();
}

}  // namespace cliffmc
