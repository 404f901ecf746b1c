#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "cliffmc/fields.hpp"
#include "cliffmc/fixtures.hpp"
#include "cliffmc/rng.hpp"

using namespace cliffmc;

namespace {

std::vector<ParaVector> sample_points(int n, std::size_t count, std::uint64_t seed,
                                      double lo = -2.0, double hi = 2.0) {
  auto eng = make_engine(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<ParaVector> pts;
  for (std::size_t p = 0; p < count; ++p) {
    ParaVector x(n);
    for (int i = 0; i <= n; ++i) x[i] = u(eng);
    pts.push_back(x);
  }
  return pts;
}

}  // namespace

TEST_CASE("central differences are second-order accurate") {
  const Fixture& fx = find_fixture("z1z1z2");
  const auto pts = sample_points(fx.dim, 8, 21);
  const std::array<double, 2> hs{1e-1, 1e-2};
  std::array<double, 2> errs{0.0, 0.0};
  for (std::size_t hi = 0; hi < hs.size(); ++hi)
    for (const ParaVector& x : pts)
      for (int i = 0; i <= fx.dim; ++i)
        errs[hi] = std::max(
            errs[hi],
            (fd_partial(fx.field, x, i, hs[hi]) - fx.field.grad[std::size_t(i)](x)).norm());
  const double slope = std::log(errs[0] / errs[1]) / std::log(hs[0] / hs[1]);
  CHECK(slope >= 1.8);
  CHECK(slope <= 2.2);
}

TEST_CASE("fd_partial argument validation") {
  const Fixture& fx = find_fixture("z1");
  const ParaVector x(fx.dim);
  CHECK_THROWS_AS(fd_partial(fx.field, x, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(fd_partial(fx.field, x, fx.dim + 1, 1e-3), std::invalid_argument);
  ParaVector edge(fx.dim);
  edge[0] = 8.0;  // on the evaluation box boundary
  CHECK_THROWS_AS(fd_partial(fx.field, edge, 0, 1e-3), std::invalid_argument);
}

TEST_CASE("hypercomplex variables are monogenic, left and right") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= n; ++k) {
      const CliffordField f = fueter_variable(k, n);
      const auto pts = sample_points(n, 25, 100 + static_cast<std::uint64_t>(10 * n + k));
      CHECK(monogenicity_check(f, pts, 1e-3, 1e-8, Side::kLeft).pass);
      CHECK(monogenicity_check(f, pts, 1e-3, 1e-8, Side::kRight).pass);
    }
  CHECK_THROWS_AS(fueter_variable(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(fueter_variable(3, 2), std::invalid_argument);
}

TEST_CASE("fueter variable values and derivatives") {
  const CliffordField z1 = fueter_variable(1, 2);
  const Multivector v = z1.eval(ParaVector(std::vector<double>{1.0, 2.0, 3.0}));
  CHECK(v[0] == 2.0);   // x_1
  CHECK(v[1] == -1.0);  // -x_0 on e_1
  CHECK(v[2] == 0.0);
  CHECK(z1.grad[0](ParaVector(2))[1] == -1.0);
  CHECK(z1.grad[1](ParaVector(2))[0] == 1.0);
  CHECK(z1.grad[2](ParaVector(2)).norm() == 0.0);
}

TEST_CASE("symmetrized products are monogenic; controls are not") {
  for (const Fixture& fx : fixture_registry()) {
    const auto pts = sample_points(fx.dim, 40, 200 + static_cast<std::uint64_t>(fx.dim));
    const auto rep = monogenicity_check(fx.field, pts, 1e-3, 1e-6);
    if (fx.expect_monogenic)
      CHECK(rep.pass);
    else
      CHECK(rep.max_residual > 1e-2);
  }
}

TEST_CASE("symmetrized product values against hand expansion") {
  // z1^2 at (0, 1, 0) is 1; at general x it is (x_1 - x_0 e_1)^2.
  const CliffordField z1sq = fueter_product(std::array{1, 1}, 2);
  CHECK((z1sq.eval(ParaVector(std::vector<double>{0.0, 1.0, 0.0})) -
         Multivector::scalar(2, 1.0))
            .norm() == 0.0);
  const ParaVector x(std::vector<double>{0.5, 2.0, -1.0});
  const CliffordField z1 = fueter_variable(1, 2);
  const CliffordField z2 = fueter_variable(2, 2);
  CHECK((z1sq.eval(x) - z1.eval(x) * z1.eval(x)).norm() <= 1e-14);
  // Symmetrized mixed product is the average of the two orderings.
  const CliffordField z12 = fueter_product(std::array{1, 2}, 2);
  const Multivector expect = (z1.eval(x) * z2.eval(x) + z2.eval(x) * z1.eval(x)) * 0.5;
  CHECK((z12.eval(x) - expect).norm() <= 1e-14);
  CHECK_THROWS_AS(fueter_product(std::array{1, 2, 3}, 2), std::invalid_argument);
  CHECK_THROWS_AS(fueter_product(std::span<const int>{}, 2), std::invalid_argument);
}

TEST_CASE("product-rule derivatives match finite differences") {
  const Fixture& fx = find_fixture("z1z2z3");
  const auto pts = sample_points(fx.dim, 5, 31, -1.0, 1.0);
  for (const ParaVector& x : pts)
    for (int i = 0; i <= fx.dim; ++i) {
      CHECK((fx.field.grad[std::size_t(i)](x) - fd_partial(fx.field, x, i, 1e-4)).norm() <=
            1e-6);
      // Hessian row i against FD of the analytic gradient.
      for (int j = 0; j <= fx.dim; ++j) {
        CliffordField gi;
        gi.dim = fx.dim;
        gi.eval = fx.field.grad[std::size_t(i)];
        CHECK((fx.field.hess[std::size_t(j)][std::size_t(i)](x) -
               fd_partial(gi, x, j, 1e-4))
                  .norm() <= 1e-6);
      }
    }
}

TEST_CASE("Dbar D factorizes the Laplacian on |x|^2") {
  const CliffordField& abs2 = find_fixture("abs2").field;
  const int n = abs2.dim;
  CliffordField df;
  df.dim = n;
  df.eval = [&abs2, n](const ParaVector& x) {
    Multivector acc = abs2.grad[0](x);
    for (int k = 1; k <= n; ++k)
      acc += Multivector::basis(n, BladeIndex{1} << (k - 1)) * abs2.grad[std::size_t(k)](x);
    return acc;
  };
  const auto pts = sample_points(n, 10, 41);
  for (const ParaVector& x : pts) {
    const Multivector lap = cr_conj_apply(df, x, 1e-4, Side::kLeft,
                                          Deriv::kFiniteDifference);
    CHECK((lap - Multivector::scalar(n, 2.0 * (n + 1))).norm() <= 1e-5);
  }
}

TEST_CASE("sphere sampling lies on the sphere") {
  auto eng = make_engine(51);
  const ParaVector c(std::vector<double>{1.0, -2.0, 0.5});
  for (int t = 0; t < 200; ++t) {
    const ParaVector y = sample_sphere(c, 0.75, eng);
    CHECK(std::abs((y - c).norm() - 0.75) <= 1e-12);
  }
}

TEST_CASE("mean value property holds for monogenic fields only") {
  const Fixture& z12 = find_fixture("z1z2");
  const ParaVector c(std::vector<double>{0.2, 0.1, -0.3});
  const MeanValueResult good = mean_value_check(z12.field, c, 0.6, 40000, 61);
  for (std::size_t k = 0; k < good.est.mean.size(); ++k)
    CHECK(std::abs(good.est.mean[k] - good.center_val[static_cast<BladeIndex>(k)]) <=
          3.0 * good.est.stderr_[k] + 1e-12);

  // |x|^2 has sphere average |c|^2 + r^2: the gap is exactly r^2.
  const Fixture& abs2 = find_fixture("abs2");
  const double r = 0.6;
  const MeanValueResult bad = mean_value_check(abs2.field, c, r, 40000, 62);
  CHECK(std::abs(bad.est.mean[0] - (c.norm() * c.norm() + r * r)) <=
        3.0 * bad.est.stderr_[0]);
  CHECK(bad.gap > 0.5 * r * r);

  CHECK_THROWS_AS(mean_value_check(abs2.field, c, -1.0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(mean_value_check(abs2.field, c, 1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("monogenicity_check rejects an empty sample set") {
  CHECK_THROWS_AS(monogenicity_check(find_fixture("z1").field, {}, 1e-3, 1e-6),
                  std::invalid_argument);
}
