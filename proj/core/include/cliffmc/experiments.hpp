// Batch experiment runners behind the CLI: each one executes a named
// check suite with pinned seeds and returns a deterministic JSON report
// (plus CSV where the experiment defines one).

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cliffmc {

struct ExperimentSpec {
  std::string kind;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 42;
  int threads = 1;
};

struct ExperimentResult {
  std::string kind;
  bool pass = false;
  std::vector<std::string> failures;
  std::string report_json;
  std::string csv;       // empty when the kind has no CSV output
  std::string csv_name;  // suggested filename for the CSV
};

// Recognized kinds: algebra-selftest, monogenicity, bm-diagnostics,
// ito-residual, ito-scaling, dirichlet, cone, liouville.
const std::vector<std::string>& experiment_kinds();

// Throws std::invalid_argument for unknown kinds or bad params (usage
// errors); numerical check failures are reported via pass/failures.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// The full reproduction sweep: every kind with acceptance-grade defaults,
// per-kind seeds derived from the master seed.
std::vector<ExperimentSpec> reproduce_all_specs(std::uint64_t master_seed, int threads);

// Re-verifies each fixture's declared monogenicity status; returns one
// failure string per mismatching fixture.  `corrupt` flips the declared
// status of the named fixture (fault-injection hook for tests).
std::vector<std::string> validate_fixture_registry(std::uint64_t seed,
                                                   const std::string& corrupt = "");

}  // namespace cliffmc
