#include "cliffmc/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cliffmc/rng.hpp"

namespace cliffmc {

Domain Domain::ball(ParaVector center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("Domain::ball: radius must be positive");
  Domain d;
  d.shape_ = Shape::kBall;
  d.center_ = std::move(center);
  d.radius_ = radius;
  return d;
}

Domain Domain::box(ParaVector lo, ParaVector hi) {
  if (lo.dim() != hi.dim()) throw std::invalid_argument("Domain::box: dimension mismatch");
  for (int i = 0; i <= lo.dim(); ++i)
    if (lo[i] >= hi[i]) throw std::invalid_argument("Domain::box: lo must be < hi");
  Domain d;
  d.shape_ = Shape::kBox;
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  return d;
}

Domain Domain::half_space(ParaVector normal, double offset) {
  const double n = normal.norm();
  if (n == 0.0) throw std::invalid_argument("Domain::half_space: zero normal");
  Domain d;
  d.shape_ = Shape::kHalfSpace;
  d.normal_ = normal * (1.0 / n);
  d.offset_ = offset / n;
  return d;
}

int Domain::dim() const {
  switch (shape_) {
    case Shape::kBall: return center_.dim();
    case Shape::kBox: return lo_.dim();
    case Shape::kHalfSpace: return normal_.dim();
  }
  return 0;
}

double Domain::dist(const ParaVector& x) const {
  switch (shape_) {
    case Shape::kBall:
      return radius_ - (x - center_).norm();
    case Shape::kBox: {
      double d = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= dim(); ++i) d = std::min({d, x[i] - lo_[i], hi_[i] - x[i]});
      return d;
    }
    case Shape::kHalfSpace:
      return offset_ - x.dot(normal_);
  }
  return 0.0;
}

ParaVector Domain::project(const ParaVector& x) const {
  switch (shape_) {
    case Shape::kBall: {
      const ParaVector r = x - center_;
      const double n = r.norm();
      if (n == 0.0) {
        ParaVector p = center_;
        p[0] += radius_;
        return p;
      }
      return center_ + r * (radius_ / n);
    }
    case Shape::kBox: {
      // Clamp into the closed box, then push the coordinate with the
      // smallest face distance onto its face.
      ParaVector p = x;
      for (int i = 0; i <= dim(); ++i) p[i] = std::clamp(p[i], lo_[i], hi_[i]);
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      bool best_low = true;
      for (int i = 0; i <= dim(); ++i) {
        if (p[i] - lo_[i] < best_d) { best_d = p[i] - lo_[i]; best = i; best_low = true; }
        if (hi_[i] - p[i] < best_d) { best_d = hi_[i] - p[i]; best = i; best_low = false; }
      }
      p[best] = best_low ? lo_[best] : hi_[best];
      return p;
    }
    case Shape::kHalfSpace:
      return x + normal_ * (offset_ - x.dot(normal_));
  }
  return x;
}

double Domain::diameter() const {
  switch (shape_) {
    case Shape::kBall: return 2.0 * radius_;
    case Shape::kBox: return (hi_ - lo_).norm();
    case Shape::kHalfSpace: return std::max(1.0, 2.0 * std::abs(offset_));
  }
  return 1.0;
}

WosResult wos_sample(const Domain& domain, const ParaVector& x, double eps,
                     std::uint64_t seed, std::size_t max_steps) {
  if (eps <= 0.0) throw std::invalid_argument("wos_sample: eps must be positive");
  if (domain.dist(x) <= 0.0) throw std::invalid_argument("wos_sample: start not interior");
  auto eng = make_engine(seed);
  ParaVector p = x;
  std::size_t steps = 0;
  double d = domain.dist(p);
  while (d >= eps) {
    if (steps >= max_steps)
      throw std::runtime_error("wos_sample: step budget exceeded (walk did not reach the "
                               "eps shell)");
    p = sample_sphere(p, d, eng);
    ++steps;
    d = domain.dist(p);
  }
  return {domain.project(p), steps};
}

std::vector<DirichletEstimate> solve_dirichlet(const Domain& domain, const BoundaryData& data,
                                               std::span<const ParaVector> points,
                                               std::size_t n_walks, double eps,
                                               std::uint64_t seed, int threads) {
  if (points.empty()) throw std::invalid_argument("solve_dirichlet: empty points list");
  if (n_walks < 1) throw std::invalid_argument("solve_dirichlet: n_walks must be >= 1");
  const int n = domain.dim();

  std::vector<DirichletEstimate> out;
  out.reserve(points.size());
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const ParaVector& x = points[pi];
    if (domain.dist(x) <= 0.0)
      throw std::invalid_argument("solve_dirichlet: evaluation point not interior");

    // Walk w of point pi uses substream (seed, pi * n_walks + w); the walk
    // geometry does not depend on phi, so runs with the same seed reuse
    // identical exit points.
    std::vector<Multivector> values(n_walks, Multivector(n));
    std::vector<std::size_t> steps(n_walks, 0);
    std::vector<unsigned char> censored(n_walks, 0);
    parallel_for(n_walks, threads, [&](std::size_t w) {
      try {
        const WosResult r =
            wos_sample(domain, x, eps, substream_seed(seed, pi * n_walks + w));
        values[w] = data.phi(r.exit_point);
        steps[w] = r.steps;
      } catch (const std::runtime_error&) {
        censored[w] = 1;
      }
    });

    DirichletEstimate est{x, {}, n_walks, eps, 0.0, 0};
    VectorStatAccumulator acc(std::size_t{1} << n);
    ChunkedSum step_sum;
    for (std::size_t w = 0; w < n_walks; ++w) {
      if (censored[w]) {
        ++est.censored;
        continue;
      }
      for (std::size_t c = 0; c < values[w].size(); ++c)
        acc.add(c, values[w][static_cast<BladeIndex>(c)]);
      step_sum.add(static_cast<double>(steps[w]));
    }
    if (est.censored == n_walks)
      throw std::runtime_error("solve_dirichlet: every walk hit the step budget");
    est.value = acc.estimate();
    est.mean_steps = step_sum.total() / static_cast<double>(n_walks - est.censored);
    out.push_back(std::move(est));
  }
  return out;
}

namespace {

ProbEstimate binomial_estimate(std::span<const unsigned char> hits) {
  const std::size_t n = hits.size();
  ChunkedSum sum;
  for (unsigned char h : hits) sum.add(static_cast<double>(h));
  const double p = sum.total() / static_cast<double>(n);
  return {p, std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n)), n};
}

}  // namespace

ProbEstimate cone_hitting_probability(double alpha, double h, int k, std::size_t n_walks,
                                      std::uint64_t seed, int dim, double dt, int threads) {
  if (alpha <= 0.0 || alpha >= 2.0 * M_PI)
    throw std::invalid_argument("cone_hitting_probability: alpha must be in (0, 2*pi)");
  if (k < 1) throw std::invalid_argument("cone_hitting_probability: k must be >= 1");
  const double cos_half = std::cos(0.5 * alpha);
  const double start_r = 0.5 * std::ldexp(h, -k);  // half of 2^{-k} h
  const double sdt = std::sqrt(dt);
  const std::size_t max_steps = 50'000'000;

  std::vector<unsigned char> hits(n_walks, 0);
  parallel_for(n_walks, threads, [&](std::size_t w) {
    auto eng = make_engine(substream_seed(seed, w));
    std::normal_distribution<double> gauss(0.0, 1.0);
    ParaVector x(dim);
    x[0] = start_r;  // on the axis, opposite side of the cone opening
    for (std::size_t s = 0; s < max_steps; ++s) {
      for (int i = 0; i <= dim; ++i) x[i] += sdt * gauss(eng);
      const double r = x.norm();
      if (r >= h) {
        hits[w] = 1;
        return;
      }
      // Cone about -e_0: angle(x, -e_0) <= alpha / 2.
      if (r > 0.0 && -x[0] >= cos_half * r) return;
    }
    throw std::runtime_error("cone_hitting_probability: step budget exceeded");
  });
  return binomial_estimate(hits);
}

std::vector<ProbEstimate> liouville_survival(double d, std::span<const double> t_grid,
                                             std::size_t n_walks, std::uint64_t seed,
                                             double dt, bool bridge_correction, int threads) {
  if (d <= 0.0) throw std::invalid_argument("liouville_survival: d must be positive");
  if (t_grid.empty()) throw std::invalid_argument("liouville_survival: empty time grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw std::invalid_argument("liouville_survival: time grid must be increasing");

  const double t_max = t_grid.back();
  const std::size_t n_steps = static_cast<std::size_t>(std::ceil(t_max / dt));
  const double step_dt = t_max / static_cast<double>(n_steps);
  const double sdt = std::sqrt(step_dt);

  // First hitting time of level d by the distance component, +inf if the
  // walk survives to t_max.
  std::vector<double> tau(n_walks, std::numeric_limits<double>::infinity());
  parallel_for(n_walks, threads, [&](std::size_t w) {
    auto eng = make_engine(substream_seed(seed, w));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double x = 0.0;
    for (std::size_t s = 0; s < n_steps; ++s) {
      const double x_next = x + sdt * gauss(eng);
      if (x_next >= d) {
        tau[w] = static_cast<double>(s + 1) * step_dt;
        return;
      }
      if (bridge_correction) {
        // Probability the Brownian bridge between the grid points crossed
        // the level: exp(-2 (d - x)(d - x_next) / dt).
        const double p_cross = std::exp(-2.0 * (d - x) * (d - x_next) / step_dt);
        if (unif(eng) < p_cross) {
          tau[w] = static_cast<double>(s + 1) * step_dt;
          return;
        }
      }
      x = x_next;
    }
  });

  std::vector<ProbEstimate> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    ChunkedSum sum;
    for (double tv : tau) sum.add(tv > t ? 1.0 : 0.0);
    const double p = sum.total() / static_cast<double>(n_walks);
    out.push_back(
        {p, std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n_walks)), n_walks});
  }
  return out;
}

}  // namespace cliffmc
