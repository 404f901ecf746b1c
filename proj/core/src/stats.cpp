#include "cliffmc/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace cliffmc {

void ChunkedSum::add(double x) {
  current_ += x;
  ++n_;
  if (n_ % chunk_ == 0) {
    partials_.push_back(current_);
    current_ = 0.0;
  }
}

double ChunkedSum::total() const {
  double t = 0.0;
  for (double p : partials_) t += p;
  return t + current_;
}

ScalarStat StatAccumulator::stat() const {
  const std::size_t n = sum_.count();
  if (n == 0) throw std::runtime_error("StatAccumulator: no samples");
  ScalarStat s;
  s.count = n;
  s.mean = sum_.total() / static_cast<double>(n);
  if (n > 1) {
    double var = (sumsq_.total() - static_cast<double>(n) * s.mean * s.mean) /
                 static_cast<double>(n - 1);
    if (var < 0.0) var = 0.0;  // roundoff
    s.stderr_ = std::sqrt(var / static_cast<double>(n));
  }
  return s;
}

MCEstimate VectorStatAccumulator::estimate() const {
  MCEstimate e;
  e.mean.reserve(acc_.size());
  e.stderr_.reserve(acc_.size());
  for (const auto& a : acc_) {
    const ScalarStat s = a.stat();
    e.mean.push_back(s.mean);
    e.stderr_.push_back(s.stderr_);
    e.count = s.count;
  }
  return e;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
  if (threads < 1) threads = 1;
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> workers;
  workers.reserve(nt);
  const std::size_t block = (n + nt - 1) / nt;
  for (std::size_t w = 0; w < nt; ++w) {
    const std::size_t lo = w * block;
    const std::size_t hi = std::min(n, lo + block);
    workers.emplace_back([lo, hi, &f] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : workers) t.join();
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace cliffmc
