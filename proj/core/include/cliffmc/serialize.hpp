#pragma once

#include <string>

#include "cliffmc/algebra.hpp"
#include "cliffmc/fields.hpp"
#include "cliffmc/ito.hpp"
#include "cliffmc/process.hpp"
#include "cliffmc/stats.hpp"

namespace cliffmc {

// {"dim": n, "coeffs": {"<blade-bitmask-as-decimal>": value, ...}},
// zero coefficients omitted.
std::string to_json(const Multivector& m);
Multivector multivector_from_json(const std::string& text);

std::string to_json(const MCEstimate& e);
std::string to_json(const MonogenicityReport& r);
std::string to_json(const ItoReport& r);

// CSV with header t,x_0,...,x_n.
std::string path_to_csv(const ProcessPath& p);

}  // namespace cliffmc
