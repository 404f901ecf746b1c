#include <doctest.h>

#include <cmath>
#include <vector>

#include "cliffmc/fixtures.hpp"
#include "cliffmc/ito.hpp"
#include "cliffmc/process.hpp"
#include "cliffmc/rng.hpp"

using namespace cliffmc;

namespace {

ProcessPath bm_path(int dim, std::size_t n_steps, std::uint64_t seed) {
  return sample_bm(PathConfig(dim, ParaVector(dim), 1.0, n_steps, seed));
}

std::vector<double> component(const ProcessPath& p, int i) {
  std::vector<double> d(p.states.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = p.states[k][i];
  return d;
}

}  // namespace

TEST_CASE("Ito integral of a constant telescopes") {
  const ProcessPath p = bm_path(1, 50, 8);
  const auto driver = component(p, 0);
  const std::vector<Multivector> integrand(50, Multivector::scalar(1, 3.0));
  const Multivector v = ito_integral(integrand, driver);
  CHECK(std::abs(v.sc() - 3.0 * (driver.back() - driver.front())) <= 1e-13);
}

TEST_CASE("integral length validation") {
  const std::vector<double> driver{0.0, 1.0, 2.0};
  const std::vector<Multivector> wrong(3, Multivector::scalar(1, 1.0));
  CHECK_THROWS_AS(ito_integral(wrong, driver), std::invalid_argument);
  CHECK_THROWS_AS(stieltjes_integral(wrong, driver), std::invalid_argument);
}

TEST_CASE("the callback integrand only ever sees the driver prefix") {
  const ProcessPath p = bm_path(1, 30, 9);
  const auto driver = component(p, 0);
  ito_integral(driver, [&](std::size_t k, std::span<const double> prefix) {
    // Adaptedness by construction: the value at step k depends on at most
    // the first k+1 grid points.
    CHECK(prefix.size() == k + 1);
    CHECK(prefix.back() == driver[k]);
    return Multivector::scalar(1, prefix.back());
  });
}

TEST_CASE("Stieltjes integral Riemann-sum oracles") {
  const std::size_t n = 100;
  std::vector<double> t_driver(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t_driver[k] = static_cast<double>(k) / n;
  const std::vector<Multivector> one(n, Multivector::scalar(1, 1.0));
  CHECK(std::abs(stieltjes_integral(one, t_driver).sc() - 1.0) <= 1e-13);
  std::vector<Multivector> ramp;
  for (std::size_t k = 0; k < n; ++k) ramp.push_back(Multivector::scalar(1, t_driver[k]));
  // Left-point sum of t dt: 1/2 - dt/2.
  CHECK(std::abs(stieltjes_integral(ramp, t_driver).sc() - 0.5) <= 1.0 / n);
  const std::vector<double> frozen(n + 1, 2.0);
  CHECK(stieltjes_integral(one, frozen).norm() == 0.0);
}

TEST_CASE("classical residual requires derivatives and a decomposition") {
  const ProcessPath p = bm_path(2, 10, 10);
  TimeField incomplete;
  incomplete.dim = 2;
  incomplete.eval = [](double, const ParaVector& x) { return Multivector::scalar(2, x[0]); };
  CHECK_THROWS_AS(classical_ito_residual(incomplete, p), std::invalid_argument);
}

TEST_CASE("Clifford formula: linear monogenic fixture is exact") {
  const Fixture& z1 = find_fixture("z1");
  const auto rep = clifford_ito_residual(z1.field, bm_path(2, 100, 11));
  CHECK(rep.report.residual_norm <= 1e-12);
  CHECK(rep.vs_classical <= 1e-12);
}

TEST_CASE("Clifford RHS equals the componentwise classical RHS") {
  for (const char* name : {"z1z1z2", "abs2", "x0"}) {
    const Fixture& fx = find_fixture(name);
    const ProcessPath p = bm_path(fx.dim, 100, 12);
    for (CovariationMode mode :
         {CovariationMode::kRawProducts, CovariationMode::kBrownianDelta})
      for (FormOrder order : {FormOrder::kFormLeft, FormOrder::kFormRight}) {
        const auto rep = clifford_ito_residual(fx.field, p, mode, DzSign::kMinus, order);
        CHECK(rep.vs_classical <= 1e-10);
      }
  }
}

TEST_CASE("the published +e_k sign does not produce an identity") {
  const Fixture& z1 = find_fixture("z1");
  const ProcessPath p = bm_path(2, 100, 13);
  const auto plus = clifford_ito_residual(z1.field, p, CovariationMode::kRawProducts,
                                          DzSign::kPlus);
  // The first-order block then misses df by 2 e_1 dX_0, which sums to
  // 2 e_1 (B_0(T) - B_0(0)) along the path.
  const double expected = 2.0 * std::abs(p.states.back()[0] - p.states.front()[0]);
  CHECK(std::abs(plus.report.residual_norm - expected) <= 1e-10);
}

TEST_CASE("monogenic reduction: exact for z_1, rejected for x_0") {
  const Fixture& z1 = find_fixture("z1");
  const ProcessPath p = bm_path(2, 100, 14);
  const auto red = monogenic_reduction_residual(z1.field, p);
  CHECK(red.report.residual_norm <= 1e-12);
  CHECK(red.max_dirac_term <= 1e-12);
  CHECK(red.max_laplacian <= 1e-12);
  CHECK_THROWS_AS(monogenic_reduction_residual(find_fixture("x0").field, p),
                  std::invalid_argument);
}

TEST_CASE("reduction agrees with the full formula for quadratic fixtures") {
  for (const char* name : {"z1z1", "z1z2"}) {
    const Fixture& fx = find_fixture(name);
    const ProcessPath p = bm_path(fx.dim, 500, 15);
    const auto red = monogenic_reduction_residual(fx.field, p);
    const auto full = clifford_ito_residual(fx.field, p, CovariationMode::kBrownianDelta);
    CHECK((red.report.rhs - full.report.rhs).norm() <= 1e-10);
  }
}

TEST_CASE("second-order form vanishes on antisymmetric increment products") {
  const Fixture& fx = find_fixture("z1z1z2");
  const int n = fx.dim;
  std::vector<std::vector<double>> w(n + 1, std::vector<double>(n + 1, 0.0));
  w[0][1] = 0.7;
  w[1][0] = -0.7;
  w[1][2] = -0.3;
  w[2][1] = 0.3;
  w[0][2] = 1.1;
  w[2][0] = -1.1;
  const ParaVector x(std::vector<double>{0.4, -0.2, 0.9});
  for (FormOrder order : {FormOrder::kFormLeft, FormOrder::kFormRight})
    CHECK(second_order_form(fx.field, x, w, DzSign::kMinus, order).norm() <= 1e-12);
  const std::vector<std::vector<double>> bad(2, std::vector<double>(2, 0.0));
  CHECK_THROWS_AS(second_order_form(fx.field, x, bad), std::invalid_argument);
}

TEST_CASE("classical quadratic field is exact under raw covariation") {
  const Fixture& abs2 = find_fixture("abs2");
  const ProcessPath p = bm_path(2, 300, 16);
  TimeField f;
  f.dim = 2;
  f.eval = [&](double, const ParaVector& x) { return abs2.field.eval(x); };
  f.dt = [](double, const ParaVector&) { return Multivector(2); };
  f.dx.resize(3);
  f.dxx.resize(3);
  for (int i = 0; i <= 2; ++i) {
    f.dx[std::size_t(i)] = [&, i](double, const ParaVector& x) {
      return abs2.field.grad[std::size_t(i)](x);
    };
    f.dxx[std::size_t(i)].resize(3);
    for (int j = 0; j <= 2; ++j)
      f.dxx[std::size_t(i)][std::size_t(j)] = [&, i, j](double, const ParaVector& x) {
        return abs2.field.hess[std::size_t(i)][std::size_t(j)](x);
      };
  }
  const auto raw = classical_ito_residual(f, p, CovariationMode::kRawProducts);
  CHECK(raw.residual_norm <= 1e-10);
}
