#include "cliffmc/ito.hpp"

#include <cmath>
#include <stdexcept>

namespace cliffmc {

namespace {

void check_driver(std::size_t integrand_len, std::size_t driver_len) {
  if (driver_len < 2 || integrand_len != driver_len - 1)
    throw std::invalid_argument("integral: integrand length must be driver length - 1");
}

// dZ_j as a multivector for scalar increments d0 = dX_0, dj = dX_j.
Multivector dz_increment(int j, double d0, double dj, int n, DzSign sign) {
  Multivector m(n);
  if (j == 0) {
    m[0] = d0;
    return m;
  }
  m[0] = dj;
  m[BladeIndex{1} << (j - 1)] = (sign == DzSign::kMinus) ? -d0 : d0;
  return m;
}

Multivector ordered_mul(const Multivector& form, const Multivector& deriv, FormOrder order) {
  return order == FormOrder::kFormLeft ? form * deriv : deriv * form;
}

// CR operator value from precomputed partials: g0 + sum e_k g_k (left)
// or g0 + sum g_k e_k (right).
Multivector cr_from_partials(std::span<const Multivector> g, int n, FormOrder order) {
  Multivector acc = g[0];
  for (int k = 1; k <= n; ++k) {
    const Multivector ek = Multivector::basis(n, BladeIndex{1} << (k - 1));
    acc += (order == FormOrder::kFormLeft) ? ek * g[static_cast<std::size_t>(k)]
                                           : g[static_cast<std::size_t>(k)] * ek;
  }
  return acc;
}

Multivector dirac_from_partials(std::span<const Multivector> g, int n, FormOrder order) {
  Multivector acc(n);
  for (int k = 1; k <= n; ++k) {
    const Multivector ek = Multivector::basis(n, BladeIndex{1} << (k - 1));
    acc += (order == FormOrder::kFormLeft) ? ek * g[static_cast<std::size_t>(k)]
                                           : g[static_cast<std::size_t>(k)] * ek;
  }
  return acc;
}

}  // namespace

Multivector ito_integral(
    std::span<const double> driver,
    const std::function<Multivector(std::size_t, std::span<const double>)>& integrand) {
  if (driver.size() < 2) throw std::invalid_argument("ito_integral: driver too short");
  Multivector acc = integrand(0, driver.first(1));
  acc *= driver[1] - driver[0];
  for (std::size_t k = 1; k + 1 < driver.size(); ++k)
    acc += integrand(k, driver.first(k + 1)) * (driver[k + 1] - driver[k]);
  return acc;
}

Multivector ito_integral(std::span<const Multivector> integrand,
                         std::span<const double> driver) {
  check_driver(integrand.size(), driver.size());
  Multivector acc(integrand[0].dim());
  for (std::size_t k = 0; k < integrand.size(); ++k)
    acc += integrand[k] * (driver[k + 1] - driver[k]);
  return acc;
}

Multivector stieltjes_integral(std::span<const Multivector> integrand,
                               std::span<const double> driver) {
  check_driver(integrand.size(), driver.size());
  Multivector acc(integrand[0].dim());
  for (std::size_t k = 0; k < integrand.size(); ++k)
    acc += integrand[k] * (driver[k + 1] - driver[k]);
  return acc;
}

ItoReport classical_ito_residual(const TimeField& f, const ProcessPath& path,
                                 CovariationMode mode) {
  if (!f.dt || f.dx.empty() || f.dxx.empty())
    throw std::invalid_argument("classical_ito_residual: analytic derivatives required");
  if (!path.has_decomposition())
    throw std::invalid_argument("classical_ito_residual: path decomposition required");
  const int n = path.dim();
  const std::size_t steps = path.n_steps();

  ItoReport rep{Multivector(n), Multivector(n), 0.0, steps,
                (path.times.back() - path.times.front()) / static_cast<double>(steps)};
  rep.lhs = f.eval(path.times.back(), path.states.back()) -
            f.eval(path.times.front(), path.states.front());

  Multivector rhs(n);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = path.times[k];
    const ParaVector& x = path.states[k];
    const double dt = path.times[k + 1] - t;
    rhs += f.dt(t, x) * dt;
    for (int i = 0; i <= n; ++i) {
      const double dm = path.martingale_part[k + 1][i] - path.martingale_part[k][i];
      const double da = path.fv_part[k + 1][i] - path.fv_part[k][i];
      rhs += f.dx[static_cast<std::size_t>(i)](t, x) * (dm + da);
      for (int j = 0; j <= n; ++j) {
        const double cov =
            (mode == CovariationMode::kRawProducts)
                ? dm * (path.martingale_part[k + 1][j] - path.martingale_part[k][j])
                : (i == j ? dt : 0.0);
        if (cov != 0.0)
          rhs += f.dxx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](t, x) *
                 (0.5 * cov);
      }
    }
  }
  rep.rhs = rhs;
  rep.residual_norm = (rep.lhs - rep.rhs).norm();
  return rep;
}

CliffordItoReport clifford_ito_residual(const CliffordField& f, const ProcessPath& path,
                                        CovariationMode mode, DzSign dz_sign,
                                        FormOrder order) {
  if (!f.has_grad() || !f.has_hess())
    throw std::invalid_argument("clifford_ito_residual: analytic derivatives required");
  const int n = path.dim();
  if (f.dim != n) throw std::invalid_argument("clifford_ito_residual: dimension mismatch");
  const std::size_t steps = path.n_steps();

  CliffordItoReport out{{Multivector(n), Multivector(n), 0.0, steps,
                         (path.times.back() - path.times.front()) / static_cast<double>(steps)},
                        Multivector(n), 0.0};
  out.report.lhs = f.eval(path.states.back()) - f.eval(path.states.front());

  Multivector rhs(n);
  Multivector classical(n);
  std::vector<Multivector> g;
  g.reserve(static_cast<std::size_t>(n) + 1);
  std::vector<double> dx(static_cast<std::size_t>(n) + 1);
  std::vector<double> dm(static_cast<std::size_t>(n) + 1);

  for (std::size_t k = 0; k < steps; ++k) {
    const ParaVector& x = path.states[k];
    const double dt = path.times[k + 1] - path.times[k];
    for (int i = 0; i <= n; ++i) {
      dx[static_cast<std::size_t>(i)] = path.states[k + 1][i] - path.states[k][i];
      dm[static_cast<std::size_t>(i)] =
          path.has_decomposition()
              ? path.martingale_part[k + 1][i] - path.martingale_part[k][i]
              : dx[static_cast<std::size_t>(i)];
    }
    auto cov = [&](int a, int b) {
      return (mode == CovariationMode::kRawProducts)
                 ? dm[static_cast<std::size_t>(a)] * dm[static_cast<std::size_t>(b)]
                 : (a == b ? dt : 0.0);
    };

    g.clear();
    for (int i = 0; i <= n; ++i) g.push_back(f.grad[static_cast<std::size_t>(i)](x));
    // H[j][i] = d_j d_i f at the left point, evaluated once per step.
    std::vector<std::vector<Multivector>> H(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
      H[static_cast<std::size_t>(j)].reserve(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i)
        H[static_cast<std::size_t>(j)].push_back(
            f.hess[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)](x));
    }

    // First-order block: dZ_0 (Df) + sum_{k>=1} dZ_k d_k f.
    const Multivector cr = cr_from_partials(g, n, order);
    rhs += ordered_mul(dz_increment(0, dx[0], dx[0], n, dz_sign), cr, order);
    for (int j = 1; j <= n; ++j)
      rhs += ordered_mul(dz_increment(j, dx[0], dx[static_cast<std::size_t>(j)], n, dz_sign),
                         g[static_cast<std::size_t>(j)], order);

    // Second-order block.  In dZ_j dX_i the scalar increment products are
    // replaced by their covariation realization.
    for (int i = 0; i <= n; ++i) {
      std::vector<Multivector> hi;
      hi.reserve(static_cast<std::size_t>(n) + 1);
      for (int j = 0; j <= n; ++j)
        hi.push_back(H[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      const Multivector dxg = dirac_from_partials(hi, n, order);
      rhs += ordered_mul(Multivector::scalar(n, 0.5 * cov(0, i)), dxg, order);
      for (int j = 0; j <= n; ++j) {
        Multivector dzdx(n);
        dzdx[0] = cov(j, i);
        if (j >= 1)
          dzdx[BladeIndex{1} << (j - 1)] =
              (dz_sign == DzSign::kMinus) ? -cov(0, i) : cov(0, i);
        rhs += ordered_mul(dzdx * 0.5, hi[static_cast<std::size_t>(j)], order);
      }
    }

    // Componentwise classical RHS on the same path, for the cross-check.
    for (int i = 0; i <= n; ++i) {
      classical += g[static_cast<std::size_t>(i)] * dx[static_cast<std::size_t>(i)];
      for (int j = 0; j <= n; ++j) {
        const double c = cov(i, j);
        if (c != 0.0)
          classical += H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * (0.5 * c);
      }
    }
  }
  out.report.rhs = rhs;
  out.report.residual_norm = (out.report.lhs - rhs).norm();
  out.classical_rhs = classical;
  out.vs_classical = (rhs - classical).norm();
  return out;
}

MonogenicReductionReport monogenic_reduction_residual(const CliffordField& f,
                                                      const ProcessPath& path, double tol,
                                                      double precheck_h) {
  if (!f.has_grad() || !f.has_hess())
    throw std::invalid_argument("monogenic_reduction_residual: analytic derivatives required");
  const int n = path.dim();
  const std::size_t steps = path.n_steps();

  // Finite-difference precheck on (a subsample of) the visited states.
  std::vector<ParaVector> pts;
  const std::size_t stride = std::max<std::size_t>(1, path.states.size() / 32);
  for (std::size_t k = 0; k < path.states.size(); k += stride) pts.push_back(path.states[k]);
  const MonogenicityReport pre = monogenicity_check(f, pts, precheck_h, tol);
  if (!pre.pass)
    throw std::invalid_argument("monogenic_reduction_residual: field failed the "
                                "monogenicity precheck, residual " +
                                std::to_string(pre.max_residual));

  MonogenicReductionReport out{{Multivector(n), Multivector(n), 0.0, steps,
                                (path.times.back() - path.times.front()) /
                                    static_cast<double>(steps)},
                               0.0,
                               0.0};
  out.report.lhs = f.eval(path.states.back()) - f.eval(path.states.front());

  Multivector rhs(n);
  std::vector<Multivector> g;
  for (std::size_t k = 0; k < steps; ++k) {
    const ParaVector& x = path.states[k];
    const double d0 = path.states[k + 1][0] - path.states[k][0];
    g.clear();
    for (int i = 0; i <= n; ++i) g.push_back(f.grad[static_cast<std::size_t>(i)](x));
    for (int j = 1; j <= n; ++j) {
      const double dj = path.states[k + 1][j] - path.states[k][j];
      rhs += dz_increment(j, d0, dj, n, DzSign::kMinus) * g[static_cast<std::size_t>(j)];
    }
    out.max_dirac_term =
        std::max(out.max_dirac_term, cr_from_partials(g, n, FormOrder::kFormLeft).norm());
    Multivector lap(n);
    for (int i = 0; i <= n; ++i)
      lap += f.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)](x);
    out.max_laplacian = std::max(out.max_laplacian, lap.norm());
  }
  if (out.max_dirac_term > tol || out.max_laplacian > tol)
    throw std::runtime_error("monogenic_reduction_residual: dropped terms exceed tolerance");
  out.report.rhs = rhs;
  out.report.residual_norm = (out.report.lhs - rhs).norm();
  return out;
}

Multivector second_order_form(const CliffordField& f, const ParaVector& x,
                              std::span<const std::vector<double>> w, DzSign dz_sign,
                              FormOrder order) {
  const int n = f.dim;
  if (w.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("second_order_form: W must be (n+1) x (n+1)");
  Multivector acc(n);
  std::vector<Multivector> hi;
  for (int i = 0; i <= n; ++i) {
    hi.clear();
    for (int j = 0; j <= n; ++j)
      hi.push_back(f.hess[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)](x));
    acc += ordered_mul(Multivector::scalar(n, 0.5 * w[0][static_cast<std::size_t>(i)]),
                       dirac_from_partials(hi, n, order), order);
    for (int j = 0; j <= n; ++j) {
      Multivector dzdx(n);
      dzdx[0] = w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (j >= 1)
        dzdx[BladeIndex{1} << (j - 1)] = (dz_sign == DzSign::kMinus)
                                             ? -w[0][static_cast<std::size_t>(i)]
                                             : w[0][static_cast<std::size_t>(i)];
      acc += ordered_mul(dzdx * 0.5, hi[static_cast<std::size_t>(j)], order);
    }
  }
  return acc;
}

}  // namespace cliffmc
