// Para-vector Brownian motion on a uniform grid, plus the path-level
// diagnostics: martingale orthogonality tests, quadratic covariation,
// reflection, first hitting times and the sup-norm martingale estimator.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cliffmc/algebra.hpp"
#include "cliffmc/stats.hpp"

namespace cliffmc {

struct PathConfig {
  int dim = 1;            // algebra dimension n; the path lives in R^{n+1}
  ParaVector start;
  double t_max = 1.0;
  std::size_t n_steps = 1;
  std::uint64_t seed = 0;

  PathConfig(int dim_, ParaVector start_, double t_max_, std::size_t n_steps_,
             std::uint64_t seed_)
      : dim(dim_), start(std::move(start_)), t_max(t_max_), n_steps(n_steps_), seed(seed_) {}
  void validate() const;
};

struct ProcessPath {
  std::vector<double> times;
  std::vector<ParaVector> states;
  // Semimartingale decomposition, when known:
  // states[i] = states[0] + martingale_part[i] + fv_part[i].
  std::vector<ParaVector> martingale_part;
  std::vector<ParaVector> fv_part;

  bool has_decomposition() const { return !martingale_part.empty(); }
  std::size_t n_steps() const { return times.size() - 1; }
  int dim() const { return states.front().dim(); }
};

enum class StopReason { kBoundaryHit, kTimeExhausted };

struct StoppedPath {
  ProcessPath path;
  std::size_t stop_index = 0;
  StopReason reason = StopReason::kTimeExhausted;
};

// Independent Gaussian increments with variance dt per component,
// deterministic given the config seed.
ProcessPath sample_bm(const PathConfig& config);

// Ensemble with per-path substream seeds derived from config.seed.
std::vector<ProcessPath> sample_bm_ensemble(const PathConfig& config, std::size_t n_paths,
                                            int threads = 1);

// A Clifford-process path derived from a para-vector path (e.g. B^2 - t).
struct MvPath {
  std::vector<double> times;
  std::vector<Multivector> states;
};

MvPath map_path(const ProcessPath& p,
                const std::function<Multivector(double, const ParaVector&)>& fn);

// F_s-measurable probe: sees the path prefix up to and including index s.
struct TestFunctional {
  std::string name;
  std::function<double(const MvPath&, std::size_t idx_s)> fn;
};

// g == 1, sc(X(s)), |X(s)|, sign(sc(X(s))).
std::vector<TestFunctional> default_test_functionals();

struct MartingaleEntry {
  std::string functional;
  MCEstimate product;  // E[(X(t)-X(s))_A g], componentwise
  bool pass = false;   // |mean| <= 3 stderr for every component
};

struct MartingaleReport {
  std::vector<MartingaleEntry> entries;
  bool pass = false;
};

// Orthogonality surrogate for E(X(t)|F_s) = X(s).
MartingaleReport martingale_test(std::span<const MvPath> paths, std::size_t idx_s,
                                 std::size_t idx_t,
                                 std::span<const TestFunctional> functionals);

// Streaming variant: path i is produced on demand (substream seeding makes
// this deterministic), so large ensembles never need to be materialized.
MartingaleReport martingale_test(std::size_t n_paths,
                                 const std::function<MvPath(std::size_t)>& path_gen,
                                 std::size_t idx_s, std::size_t idx_t,
                                 std::span<const TestFunctional> functionals);

// Running sum of increment products for components i and j, one value per
// grid time (starts at 0).
std::vector<double> quadratic_covariation(const ProcessPath& path, int i, int j);

// B*(t) = B(t) for t <= T, 2 B(T) - B(t) for t > T.
ProcessPath reflect_path(const ProcessPath& path, std::size_t stop_index);

StoppedPath first_hit(const ProcessPath& path,
                      const std::function<bool(const ParaVector&)>& region_test);

// sqrt of the MC mean of sup_t |M(t)|^2 (coefficient Euclidean norm).
// Uses the martingale part when present, otherwise states - states[0].
double mart_norm_estimate(std::span<const ProcessPath> paths);

}  // namespace cliffmc
