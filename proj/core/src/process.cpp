#include "cliffmc/process.hpp"

#include <cmath>
#include <stdexcept>

#include "cliffmc/rng.hpp"

namespace cliffmc {

void PathConfig::validate() const {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("PathConfig: bad dimension");
  if (start.dim() != dim) throw std::invalid_argument("PathConfig: start dimension mismatch");
  if (t_max <= 0.0) throw std::invalid_argument("PathConfig: t_max must be positive");
  if (n_steps < 1) throw std::invalid_argument("PathConfig: n_steps must be >= 1");
}

ProcessPath sample_bm(const PathConfig& config) {
  config.validate();
  const double dt = config.t_max / static_cast<double>(config.n_steps);
  const double sdt = std::sqrt(dt);
  auto eng = make_engine(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  ProcessPath p;
  p.times.reserve(config.n_steps + 1);
  p.states.reserve(config.n_steps + 1);
  p.martingale_part.reserve(config.n_steps + 1);
  p.fv_part.reserve(config.n_steps + 1);
  p.times.push_back(0.0);
  p.states.push_back(config.start);
  p.martingale_part.emplace_back(config.dim);
  p.fv_part.emplace_back(config.dim);
  ParaVector x = config.start;
  for (std::size_t k = 1; k <= config.n_steps; ++k) {
    for (int i = 0; i <= config.dim; ++i) x[i] += sdt * gauss(eng);
    p.times.push_back(static_cast<double>(k) * dt);
    p.states.push_back(x);
    p.martingale_part.push_back(x - config.start);
    p.fv_part.emplace_back(config.dim);
  }
  return p;
}

std::vector<ProcessPath> sample_bm_ensemble(const PathConfig& config, std::size_t n_paths,
                                            int threads) {
  config.validate();
  std::vector<ProcessPath> out(n_paths);
  parallel_for(n_paths, threads, [&](std::size_t i) {
    PathConfig c = config;
    c.seed = substream_seed(config.seed, i);
    out[i] = sample_bm(c);
  });
  return out;
}

MvPath map_path(const ProcessPath& p,
                const std::function<Multivector(double, const ParaVector&)>& fn) {
  MvPath out;
  out.times = p.times;
  out.states.reserve(p.states.size());
  for (std::size_t i = 0; i < p.states.size(); ++i)
    out.states.push_back(fn(p.times[i], p.states[i]));
  return out;
}

std::vector<TestFunctional> default_test_functionals() {
  std::vector<TestFunctional> g;
  g.push_back({"one", [](const MvPath&, std::size_t) { return 1.0; }});
  g.push_back({"sc", [](const MvPath& p, std::size_t s) { return p.states[s].sc(); }});
  g.push_back({"norm", [](const MvPath& p, std::size_t s) { return p.states[s].norm(); }});
  g.push_back({"sign_sc", [](const MvPath& p, std::size_t s) {
                 return p.states[s].sc() >= 0.0 ? 1.0 : -1.0;
               }});
  return g;
}

MartingaleReport martingale_test(std::span<const MvPath> paths, std::size_t idx_s,
                                 std::size_t idx_t,
                                 std::span<const TestFunctional> functionals) {
  return martingale_test(
      paths.size(), [&](std::size_t i) { return paths[i]; }, idx_s, idx_t, functionals);
}

MartingaleReport martingale_test(std::size_t n_paths,
                                 const std::function<MvPath(std::size_t)>& path_gen,
                                 std::size_t idx_s, std::size_t idx_t,
                                 std::span<const TestFunctional> functionals) {
  if (n_paths == 0) throw std::invalid_argument("martingale_test: empty ensemble");

  MartingaleReport rep;
  rep.pass = true;
  std::vector<VectorStatAccumulator> accs;
  for (std::size_t i = 0; i < n_paths; ++i) {
    const MvPath p = path_gen(i);
    if (i == 0) {
      if (idx_s >= idx_t || idx_t >= p.times.size())
        throw std::invalid_argument("martingale_test: need grid indices s < t");
      accs.assign(functionals.size(), VectorStatAccumulator(p.states[0].size()));
    }
    const Multivector diff = p.states[idx_t] - p.states[idx_s];
    for (std::size_t fi = 0; fi < functionals.size(); ++fi) {
      const double gv = functionals[fi].fn(p, idx_s);
      for (std::size_t c = 0; c < diff.size(); ++c)
        accs[fi].add(c, diff[static_cast<BladeIndex>(c)] * gv);
    }
  }
  for (std::size_t fi = 0; fi < functionals.size(); ++fi) {
    MartingaleEntry e{functionals[fi].name, accs[fi].estimate(), true};
    for (std::size_t c = 0; c < e.product.mean.size(); ++c)
      if (std::abs(e.product.mean[c]) > 3.0 * e.product.stderr_[c]) e.pass = false;
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

std::vector<double> quadratic_covariation(const ProcessPath& path, int i, int j) {
  if (path.times.size() < 2)
    throw std::invalid_argument("quadratic_covariation: need at least 2 grid points");
  if (i < 0 || i > path.dim() || j < 0 || j > path.dim())
    throw std::invalid_argument("quadratic_covariation: component index out of range");
  std::vector<double> running;
  running.reserve(path.times.size());
  running.push_back(0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < path.states.size(); ++k) {
    const double di = path.states[k + 1][i] - path.states[k][i];
    const double dj = path.states[k + 1][j] - path.states[k][j];
    acc += di * dj;
    running.push_back(acc);
  }
  return running;
}

ProcessPath reflect_path(const ProcessPath& path, std::size_t stop_index) {
  if (stop_index >= path.states.size())
    throw std::invalid_argument("reflect_path: stop index out of range");
  ProcessPath out;
  out.times = path.times;
  out.states = path.states;
  const ParaVector& pivot = path.states[stop_index];
  for (std::size_t k = stop_index + 1; k < out.states.size(); ++k)
    out.states[k] = 2.0 * pivot - path.states[k];
  return out;
}

StoppedPath first_hit(const ProcessPath& path,
                      const std::function<bool(const ParaVector&)>& region_test) {
  for (std::size_t k = 0; k < path.states.size(); ++k)
    if (region_test(path.states[k])) return {path, k, StopReason::kBoundaryHit};
  return {path, path.n_steps(), StopReason::kTimeExhausted};
}

double mart_norm_estimate(std::span<const ProcessPath> paths) {
  if (paths.empty()) throw std::invalid_argument("mart_norm_estimate: empty ensemble");
  ChunkedSum sum;
  for (const ProcessPath& p : paths) {
    double sup = 0.0;
    if (p.has_decomposition()) {
      for (const ParaVector& m : p.martingale_part) {
        const double n = m.norm();
        sup = std::max(sup, n * n);
      }
    } else {
      for (const ParaVector& s : p.states) {
        const double n = (s - p.states.front()).norm();
        sup = std::max(sup, n * n);
      }
    }
    sum.add(sup);
  }
  return std::sqrt(sum.total() / static_cast<double>(paths.size()));
}

}  // namespace cliffmc
