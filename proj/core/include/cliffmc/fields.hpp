// Clifford-valued fields on para-vector space, the Dirac and generalised
// Cauchy-Riemann operators (finite-difference or analytic), monogenic
// polynomial fixtures built from the hypercomplex variables
// z_k = x_k - x_0 e_k, and the sphere mean-value check.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cliffmc/algebra.hpp"
#include "cliffmc/rng.hpp"
#include "cliffmc/stats.hpp"

namespace cliffmc {

using FieldFn = std::function<Multivector(const ParaVector&)>;

struct CliffordField {
  int dim = 0;
  FieldFn eval;
  // Analytic partials d/dx_0 ... d/dx_n; empty when only eval is known.
  std::vector<FieldFn> grad;
  // Analytic second partials, (n+1) x (n+1); empty when unknown.
  std::vector<std::vector<FieldFn>> hess;
  // Evaluation box; empty means unbounded.
  std::vector<double> box_lo, box_hi;

  bool has_grad() const { return !grad.empty(); }
  bool has_hess() const { return !hess.empty(); }
  bool in_domain(const ParaVector& x, double margin = 0.0) const;
};

enum class Side { kLeft, kRight };
enum class Deriv { kAnalyticIfAvailable, kFiniteDifference };

// Central-difference partial (f(x + h e_i) - f(x - h e_i)) / (2h).
Multivector fd_partial(const CliffordField& f, const ParaVector& x, int i, double h);

Multivector partial(const CliffordField& f, const ParaVector& x, int i, double h,
                    Deriv mode = Deriv::kAnalyticIfAvailable);

// Dirac operator: sum_k e_k d/dx_k f (left) or sum_k (d/dx_k f) e_k (right).
Multivector dirac_apply(const CliffordField& f, const ParaVector& x, double h,
                        Side side = Side::kLeft,
                        Deriv mode = Deriv::kAnalyticIfAvailable);

// Generalised Cauchy-Riemann operator D = d/dx_0 + Dirac, and its
// conjugate Dbar = d/dx_0 - Dirac.
Multivector cr_apply(const CliffordField& f, const ParaVector& x, double h,
                     Side side = Side::kLeft,
                     Deriv mode = Deriv::kAnalyticIfAvailable);
Multivector cr_conj_apply(const CliffordField& f, const ParaVector& x, double h,
                          Side side = Side::kLeft,
                          Deriv mode = Deriv::kAnalyticIfAvailable);

// z_k = x_k - x_0 e_k, with analytic gradient and zero Hessian.
CliffordField fueter_variable(int k, int n);

// Symmetrized product (1/m!) sum_perm z_{k_s(1)} ... z_{k_s(m)}, m <= 4,
// with analytic first and second derivatives via the product rule.
CliffordField fueter_product(std::span<const int> ks, int n);

struct MonogenicityReport {
  double max_residual = 0.0;
  std::size_t sample_points = 0;
  double step = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Max norm of the finite-difference CR residual over the sample points.
// Always uses central differences so fixtures are validated, not trusted.
MonogenicityReport monogenicity_check(const CliffordField& f,
                                      std::span<const ParaVector> points, double h,
                                      double tol, Side side = Side::kLeft);

struct MeanValueResult {
  Multivector sphere_avg;
  Multivector center_val;
  double gap = 0.0;     // |sphere_avg - center_val|, coefficient norm
  MCEstimate est;       // componentwise sphere average with stderr
};

MeanValueResult mean_value_check(const CliffordField& f, const ParaVector& center,
                                 double radius, std::size_t n_quad, std::uint64_t seed);

// Uniform point on the sphere of given radius about center (normalized
// Gaussian direction).
ParaVector sample_sphere(const ParaVector& center, double radius, std::mt19937_64& eng);

}  // namespace cliffmc
