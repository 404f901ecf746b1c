#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace cliffmc {

// Fixed-chunk pairwise summation.  Values are accumulated in chunks of a
// fixed size and chunk totals are added in index order, so the result does
// not depend on how producers were scheduled.
class ChunkedSum {
 public:
  explicit ChunkedSum(std::size_t chunk = 4096) : chunk_(chunk) {}
  void add(double x);
  double total() const;
  std::size_t count() const { return n_; }

 private:
  std::size_t chunk_;
  std::size_t n_ = 0;
  double current_ = 0.0;
  std::vector<double> partials_;
};

struct ScalarStat {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t count = 0;
};

class StatAccumulator {
 public:
  void add(double x) {
    sum_.add(x);
    sumsq_.add(x * x);
  }
  ScalarStat stat() const;

 private:
  ChunkedSum sum_, sumsq_;
};

// Componentwise mean / standard error of a Clifford-valued MC expectation.
struct MCEstimate {
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::size_t count = 0;
};

class VectorStatAccumulator {
 public:
  explicit VectorStatAccumulator(std::size_t n_components) : acc_(n_components) {}
  void add(std::size_t component, double x) { acc_[component].add(x); }
  MCEstimate estimate() const;
  std::size_t components() const { return acc_.size(); }

 private:
  std::vector<StatAccumulator> acc_;
};

// Runs f(i) for i in [0, n) over `threads` workers in fixed contiguous
// blocks.  Callers write results into per-index slots, so the outcome is
// scheduling-independent.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);

// Standard normal CDF.
double norm_cdf(double x);

}  // namespace cliffmc
