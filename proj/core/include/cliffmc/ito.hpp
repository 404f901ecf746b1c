// Ito and Lebesgue-Stieltjes integrals on grid paths, and both Ito
// formulas (componentwise classical and the Clifford regrouping through
// the hypercomplex 1-forms dz_k) as computable path identities.

#pragma once

#include <functional>
#include <span>

#include "cliffmc/fields.hpp"
#include "cliffmc/process.hpp"

namespace cliffmc {

// How second-order increment products dM_i dM_j are realized.
enum class CovariationMode {
  kRawProducts,    // pathwise products of martingale increments
  kBrownianDelta,  // the Brownian specialization delta_ij dt
};

// Sign of the e_k dX_0 term in dZ_k.  kMinus is the 1-form convention
// dz_k = dx_k - e_k dx_0 that makes the first-order regrouping an
// identity; kPlus is the published variant, kept so the difference can be
// demonstrated.
enum class DzSign { kMinus, kPlus };

// Whether the 1-form multiplies the derivative from the left or right.
enum class FormOrder { kFormLeft, kFormRight };

struct ItoReport {
  Multivector lhs;
  Multivector rhs;
  double residual_norm = 0.0;
  std::size_t n_steps = 0;
  double dt = 0.0;
};

// Left-point Riemann sum sum_k F(t_k) (M(t_{k+1}) - M(t_k)).  The
// integrand callback only ever sees the driver prefix up to its own grid
// time, so a non-adapted integrand cannot be expressed.
Multivector ito_integral(
    std::span<const double> driver,
    const std::function<Multivector(std::size_t k, std::span<const double> driver_prefix)>&
        integrand);

// Precomputed adapted integrand values, one per step (left points).
Multivector ito_integral(std::span<const Multivector> integrand,
                         std::span<const double> driver);

// Same sum against a finite-variation driver.
Multivector stieltjes_integral(std::span<const Multivector> integrand,
                               std::span<const double> driver);

// f(t, x) with scalar time derivative structure applied componentwise.
struct TimeField {
  int dim = 0;
  std::function<Multivector(double, const ParaVector&)> eval;
  std::function<Multivector(double, const ParaVector&)> dt;       // f_t
  std::vector<std::function<Multivector(double, const ParaVector&)>> dx;   // n+1
  std::vector<std::vector<std::function<Multivector(double, const ParaVector&)>>> dxx;
};

// LHS f(t,X(t)) - f(0,X(0)); RHS the four classical Ito sums, with the
// covariation increments realized per `mode`.
ItoReport classical_ito_residual(const TimeField& f, const ProcessPath& path,
                                 CovariationMode mode = CovariationMode::kRawProducts);

struct CliffordItoReport {
  ItoReport report;
  Multivector classical_rhs;   // componentwise classical RHS on the same path
  double vs_classical = 0.0;   // |rhs - classical_rhs|
};

// Clifford Ito formula in integral form: first-order block
// dZ_0 (Df) + sum_{k>=1} dZ_k d_k f, second-order block
// 1/2 sum_i [ dZ_0 dX_i D_x(d_i f) + sum_{j>=0} dZ_j dX_i d_j d_i f ],
// with dZ_0 = dX_0 and dZ_k = dX_k -/+ e_k dX_0.
CliffordItoReport clifford_ito_residual(const CliffordField& f, const ProcessPath& path,
                                        CovariationMode mode = CovariationMode::kRawProducts,
                                        DzSign dz_sign = DzSign::kMinus,
                                        FormOrder order = FormOrder::kFormLeft);

struct MonogenicReductionReport {
  ItoReport report;            // reduced identity f(B_t) = f(B_0) + sum dZ_k d_k f
  double max_dirac_term = 0.0; // max |Df| over left points (asserted <= tol)
  double max_laplacian = 0.0;  // max |sum_i d_i d_i f| over left points
};

// Reduction for monogenic f against a Brownian path.  Runs a
// finite-difference monogenicity precheck on the path points and fails if
// it does not pass; the dropped Df and Laplacian terms are measured, not
// silently discarded.
MonogenicReductionReport monogenic_reduction_residual(const CliffordField& f,
                                                      const ProcessPath& path,
                                                      double tol = 1e-6,
                                                      double precheck_h = 1e-3);

// The assembled Clifford second-order form with the increment-product
// matrix W (W[j][i] standing for dX_j dX_i) supplied explicitly.  For
// antisymmetric W the form vanishes: d^2 = 0.
Multivector second_order_form(const CliffordField& f, const ParaVector& x,
                              std::span<const std::vector<double>> w,
                              DzSign dz_sign = DzSign::kMinus,
                              FormOrder order = FormOrder::kFormLeft);

}  // namespace cliffmc
