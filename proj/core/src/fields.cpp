#include "cliffmc/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cliffmc {

bool CliffordField::in_domain(const ParaVector& x, double margin) const {
  if (box_lo.empty()) return true;
  for (int i = 0; i <= dim; ++i) {
    if (x[i] < box_lo[static_cast<std::size_t>(i)] + margin ||
        x[i] > box_hi[static_cast<std::size_t>(i)] - margin)
      return false;
  }
  return true;
}

Multivector fd_partial(const CliffordField& f, const ParaVector& x, int i, double h) {
  if (h <= 0.0) throw std::invalid_argument("fd_partial: h must be positive");
  if (i < 0 || i > f.dim) throw std::invalid_argument("fd_partial: direction out of range");
  if (!f.in_domain(x, h))
    throw std::invalid_argument("fd_partial: point too close to the domain boundary");
  ParaVector xp = x, xm = x;
  xp[i] += h;
  xm[i] -= h;
  return (f.eval(xp) - f.eval(xm)) * (0.5 / h);
}

Multivector partial(const CliffordField& f, const ParaVector& x, int i, double h, Deriv mode) {
  if (mode == Deriv::kAnalyticIfAvailable && f.has_grad())
    return f.grad[static_cast<std::size_t>(i)](x);
  return fd_partial(f, x, i, h);
}

Multivector dirac_apply(const CliffordField& f, const ParaVector& x, double h, Side side,
                        Deriv mode) {
  Multivector acc(f.dim);
  for (int k = 1; k <= f.dim; ++k) {
    const Multivector dk = partial(f, x, k, h, mode);
    const Multivector ek = Multivector::basis(f.dim, BladeIndex{1} << (k - 1));
    acc += (side == Side::kLeft) ? ek * dk : dk * ek;
  }
  return acc;
}

Multivector cr_apply(const CliffordField& f, const ParaVector& x, double h, Side side,
                     Deriv mode) {
  return partial(f, x, 0, h, mode) + dirac_apply(f, x, h, side, mode);
}

Multivector cr_conj_apply(const CliffordField& f, const ParaVector& x, double h, Side side,
                          Deriv mode) {
  return partial(f, x, 0, h, mode) - dirac_apply(f, x, h, side, mode);
}

CliffordField fueter_variable(int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("fueter_variable: index out of range");
  CliffordField f;
  f.dim = n;
  const BladeIndex ek = BladeIndex{1} << (k - 1);
  f.eval = [n, k, ek](const ParaVector& x) {
    Multivector m(n);
    m[0] = x[k];
    m[ek] = -x[0];
    return m;
  };
  f.grad.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    Multivector g(n);
    if (i == 0)
      g[ek] = -1.0;
    else if (i == k)
      g[0] = 1.0;
    f.grad[static_cast<std::size_t>(i)] = [g](const ParaVector&) { return g; };
  }
  f.hess.assign(static_cast<std::size_t>(n) + 1,
                std::vector<FieldFn>(static_cast<std::size_t>(n) + 1,
                                     [n](const ParaVector&) { return Multivector(n); }));
  return f;
}

namespace {

// Constant derivative of z_k in direction i: -e_k for i = 0, 1 for i = k.
Multivector fueter_deriv(int k, int i, int n) {
  Multivector m(n);
  if (i == 0)
    m[BladeIndex{1} << (k - 1)] = -1.0;
  else if (i == k)
    m[0] = 1.0;
  return m;
}

// Product over one factor ordering, with up to two factors replaced by
// their (constant) partial derivatives.
Multivector ordered_product(const std::vector<int>& order, const ParaVector& x, int n,
                            int repl_pos1 = -1, int dir1 = -1, int repl_pos2 = -1,
                            int dir2 = -1) {
  Multivector acc = Multivector::scalar(n, 1.0);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const int k = order[p];
    Multivector factor(n);
    if (static_cast<int>(p) == repl_pos1)
      factor = fueter_deriv(k, dir1, n);
    else if (static_cast<int>(p) == repl_pos2)
      factor = fueter_deriv(k, dir2, n);
    else {
      factor[0] = x[k];
      factor[BladeIndex{1} << (k - 1)] = -x[0];
    }
    acc = acc * factor;
  }
  return acc;
}

}  // namespace

CliffordField fueter_product(std::span<const int> ks, int n) {
  if (ks.empty() || ks.size() > 4)
    throw std::invalid_argument("fueter_product: need 1..4 factors");
  for (int k : ks)
    if (k < 1 || k > n) throw std::invalid_argument("fueter_product: index out of range");

  std::vector<int> base(ks.begin(), ks.end());
  std::sort(base.begin(), base.end());
  // All orderings of the factor list (duplicates included, so the 1/m!
  // weight is by total permutation count, not by distinct orderings).
  std::vector<std::vector<int>> orders;
  std::vector<int> idx(base.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    std::vector<int> o(base.size());
    for (std::size_t p = 0; p < base.size(); ++p) o[p] = base[static_cast<std::size_t>(idx[p])];
    orders.push_back(std::move(o));
  } while (std::next_permutation(idx.begin(), idx.end()));
  const double w = 1.0 / static_cast<double>(orders.size());
  const int m = static_cast<int>(base.size());

  CliffordField f;
  f.dim = n;
  f.eval = [orders, w, n](const ParaVector& x) {
    Multivector acc(n);
    for (const auto& o : orders) acc += ordered_product(o, x, n);
    return acc * w;
  };
  f.grad.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    f.grad[static_cast<std::size_t>(i)] = [orders, w, n, m, i](const ParaVector& x) {
      Multivector acc(n);
      for (const auto& o : orders)
        for (int p = 0; p < m; ++p) acc += ordered_product(o, x, n, p, i);
      return acc * w;
    };
  }
  f.hess.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    f.hess[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
      auto entry = [orders, w, n, m, i, j](const ParaVector& x) {
        Multivector acc(n);
        for (const auto& o : orders)
          for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q) {
              if (p == q) continue;  // z_k is linear, second derivative of a factor is 0
              acc += ordered_product(o, x, n, p, i, q, j);
            }
        return acc * w;
      };
      if (m <= 2) {
        // Degree <= 2: the second derivatives are constant.
        const Multivector c = entry(ParaVector(n));
        f.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            [c](const ParaVector&) { return c; };
      } else {
        f.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entry;
      }
    }
  }
  return f;
}

MonogenicityReport monogenicity_check(const CliffordField& f,
                                      std::span<const ParaVector> points, double h,
                                      double tol, Side side) {
  if (points.empty()) throw std::invalid_argument("monogenicity_check: empty sample set");
  MonogenicityReport rep;
  rep.sample_points = points.size();
  rep.step = h;
  rep.tol = tol;
  for (const ParaVector& x : points) {
    const double r = cr_apply(f, x, h, side, Deriv::kFiniteDifference).norm();
    rep.max_residual = std::max(rep.max_residual, r);
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

ParaVector sample_sphere(const ParaVector& center, double radius, std::mt19937_64& eng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = center.dim();
  ParaVector dir(n);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int i = 0; i <= n; ++i) {
      dir[i] = gauss(eng);
      norm2 += dir[i] * dir[i];
    }
  } while (norm2 == 0.0);
  return center + dir * (radius / std::sqrt(norm2));
}

MeanValueResult mean_value_check(const CliffordField& f, const ParaVector& center,
                                 double radius, std::size_t n_quad, std::uint64_t seed) {
  if (radius <= 0.0) throw std::invalid_argument("mean_value_check: radius must be positive");
  if (n_quad == 0) throw std::invalid_argument("mean_value_check: n_quad must be >= 1");
  auto eng = make_engine(seed);
  VectorStatAccumulator acc(std::size_t{1} << f.dim);
  for (std::size_t q = 0; q < n_quad; ++q) {
    const Multivector v = f.eval(sample_sphere(center, radius, eng));
    for (std::size_t c = 0; c < v.size(); ++c) acc.add(c, v[static_cast<BladeIndex>(c)]);
  }
  MeanValueResult res{Multivector(f.dim), f.eval(center), 0.0, acc.estimate()};
  for (std::size_t c = 0; c < res.sphere_avg.size(); ++c)
    res.sphere_avg[static_cast<BladeIndex>(c)] = res.est.mean[c];
  res.gap = (res.sphere_avg - res.center_val).norm();
  return res;
}

}  // namespace cliffmc
