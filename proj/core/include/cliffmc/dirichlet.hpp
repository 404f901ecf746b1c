// Walk-on-spheres Dirichlet solver for Clifford-valued boundary data,
// plus the timed experiments that need grid paths: cone hitting
// probabilities and the hyperplane survival driver of the Liouville
// argument.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cliffmc/fields.hpp"

namespace cliffmc {

class Domain {
 public:
  enum class Shape { kBall, kBox, kHalfSpace };

  static Domain ball(ParaVector center, double radius);
  static Domain box(ParaVector lo, ParaVector hi);
  // Interior is {x : normal . x < offset}.
  static Domain half_space(ParaVector normal, double offset);

  Shape shape() const { return shape_; }
  int dim() const;
  // Distance to the boundary, positive iff interior; exact for all shapes.
  double dist(const ParaVector& x) const;
  ParaVector project(const ParaVector& x) const;  // nearest boundary point
  // Boundary-to-boundary extent; used to scale the default eps shell.
  // Unbounded shapes report an effective scale instead.
  double diameter() const;

 private:
  Domain() = default;
  Shape shape_ = Shape::kBall;
  ParaVector center_{1}, lo_{1}, hi_{1}, normal_{1};
  double radius_ = 0.0, offset_ = 0.0;
};

struct BoundaryData {
  std::function<Multivector(const ParaVector&)> phi;
  std::optional<CliffordField> known_extension;  // for validation only
};

struct WosResult {
  ParaVector exit_point;
  std::size_t steps = 0;
};

// Repeated uniform jumps to the inscribed sphere until within eps of the
// boundary, then projection.  Samples B(tau) exactly in distribution.
// Throws if x is not interior or the step budget is exhausted.
WosResult wos_sample(const Domain& domain, const ParaVector& x, double eps,
                     std::uint64_t seed, std::size_t max_steps = 100000);

struct DirichletEstimate {
  ParaVector point;
  MCEstimate value;       // componentwise over blade coefficients
  std::size_t n_walks = 0;
  double eps_shell = 0.0;
  double mean_steps = 0.0;
  std::size_t censored = 0;  // walks that hit the step budget (unbounded domains)
};

std::vector<DirichletEstimate> solve_dirichlet(const Domain& domain, const BoundaryData& data,
                                               std::span<const ParaVector> points,
                                               std::size_t n_walks, double eps,
                                               std::uint64_t seed, int threads = 1);

struct ProbEstimate {
  double p = 0.0;
  double stderr_ = 0.0;
  std::size_t n = 0;
};

// P{ tau(dB_h(0)) < tau(cone) } for Brownian motion started at distance
// 2^{-k-1} h from the cone tip, estimated on a fine Euler grid.  The cone
// has opening angle alpha about the -e_0 axis; ambient space is R^{dim+1}.
ProbEstimate cone_hitting_probability(double alpha, double h, int k, std::size_t n_walks,
                                      std::uint64_t seed, int dim = 1, double dt = 2e-5,
                                      int threads = 1);

// Survival probabilities P{ tau(H) > t } for a hyperplane at distance d,
// one entry per grid time.  Euler paths with Brownian-bridge crossing
// correction, which removes the discrete-monitoring bias.
std::vector<ProbEstimate> liouville_survival(double d, std::span<const double> t_grid,
                                             std::size_t n_walks, std::uint64_t seed,
                                             double dt = 0.05, bool bridge_correction = true,
                                             int threads = 1);

}  // namespace cliffmc
