#include <doctest.h>

#include <cmath>
#include <vector>

#include "cliffmc/dirichlet.hpp"
#include "cliffmc/fixtures.hpp"
#include "cliffmc/rng.hpp"
#include "cliffmc/stats.hpp"

using namespace cliffmc;

TEST_CASE("domain distance and projection are exact") {
  const Domain ball = Domain::ball(ParaVector(std::vector<double>{1.0, 0.0, 0.0}), 2.0);
  const ParaVector in(std::vector<double>{1.0, 0.5, 0.0});
  CHECK(std::abs(ball.dist(in) - 1.5) <= 1e-14);
  CHECK(std::abs((ball.project(in) - ball.project(in)).norm()) == 0.0);
  CHECK(std::abs((ball.project(in) -
                  ParaVector(std::vector<double>{1.0, 2.0, 0.0})).norm()) <= 1e-14);
  CHECK(ball.diameter() == 4.0);
  CHECK(ball.dim() == 2);

  const Domain box = Domain::box(ParaVector(std::vector<double>{-1.0, -1.0}),
                                 ParaVector(std::vector<double>{1.0, 3.0}));
  const ParaVector p(std::vector<double>{0.5, 0.0});
  CHECK(std::abs(box.dist(p) - 0.5) <= 1e-14);
  CHECK((box.project(p) - ParaVector(std::vector<double>{1.0, 0.0})).norm() <= 1e-14);

  ParaVector normal(std::vector<double>{1.0, 0.0});
  const Domain hs = Domain::half_space(normal, 1.0);
  const ParaVector q(std::vector<double>{0.25, 7.0});
  CHECK(std::abs(hs.dist(q) - 0.75) <= 1e-14);
  CHECK((hs.project(q) - ParaVector(std::vector<double>{1.0, 7.0})).norm() <= 1e-14);
}

TEST_CASE("domain factory validation") {
  CHECK_THROWS_AS(Domain::ball(ParaVector(2), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Domain::box(ParaVector(std::vector<double>{1.0, 0.0}),
                              ParaVector(std::vector<double>{0.0, 1.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(Domain::box(ParaVector(1), ParaVector(2)), std::invalid_argument);
  CHECK_THROWS_AS(Domain::half_space(ParaVector(2), 1.0), std::invalid_argument);
}

TEST_CASE("walk from the ball center exits in one step on the sphere") {
  const Domain ball = Domain::ball(ParaVector(2), 1.0);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const WosResult r = wos_sample(ball, ParaVector(2), 1e-4, s);
    CHECK(r.steps == 1);
    CHECK(std::abs(r.exit_point.norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("uniform sphere exit law from the center") {
  const Domain ball = Domain::ball(ParaVector(2), 1.0);
  const std::size_t n = 2000;
  VectorStatAccumulator mean(3), second(3);
  for (std::size_t w = 0; w < n; ++w) {
    const WosResult r = wos_sample(ball, ParaVector(2), 1e-4, substream_seed(77, w));
    for (int i = 0; i <= 2; ++i) {
      mean.add(std::size_t(i), r.exit_point[i]);
      second.add(std::size_t(i), r.exit_point[i] * r.exit_point[i]);
    }
  }
  const MCEstimate em = mean.estimate(), e2 = second.estimate();
  for (std::size_t i = 0; i <= 2; ++i) {
    CHECK(std::abs(em.mean[i]) <= 4.0 * em.stderr_[i]);
    CHECK(std::abs(e2.mean[i] - 1.0 / 3.0) <= 4.0 * e2.stderr_[i]);
  }
}

TEST_CASE("points already in the eps shell take zero steps") {
  const Domain ball = Domain::ball(ParaVector(1), 1.0);
  ParaVector x(1);
  x[0] = 0.99995;
  const WosResult r = wos_sample(ball, x, 1e-3, 1);
  CHECK(r.steps == 0);
  CHECK(std::abs(r.exit_point.norm() - 1.0) <= 1e-12);
}

TEST_CASE("wos argument and budget validation") {
  const Domain ball = Domain::ball(ParaVector(1), 1.0);
  ParaVector outside(1);
  outside[0] = 2.0;
  CHECK_THROWS_AS(wos_sample(ball, outside, 1e-4, 1), std::invalid_argument);
  CHECK_THROWS_AS(wos_sample(ball, ParaVector(1), 0.0, 1), std::invalid_argument);
  ParaVector mid(1);
  mid[0] = 0.5;
  CHECK_THROWS_AS(wos_sample(ball, mid, 1e-9, 1, 1), std::runtime_error);
}

TEST_CASE("mean step count in the unit box sits in the known band") {
  const Domain box = Domain::box(ParaVector(std::vector<double>{0.0, 0.0}),
                                 ParaVector(std::vector<double>{1.0, 1.0}));
  ParaVector c(1);
  c[0] = 0.5;
  c[1] = 0.5;
  double total = 0.0;
  const std::size_t n = 500;
  for (std::size_t w = 0; w < n; ++w)
    total += static_cast<double>(wos_sample(box, c, 1e-4 * box.diameter(), 900 + w).steps);
  const double mean = total / static_cast<double>(n);
  // O(log 1/eps) walk length; generous band around the observed value.
  CHECK(mean >= 3.0);
  CHECK(mean <= 40.0);
}

TEST_CASE("constant boundary data is reproduced exactly") {
  const Domain ball = Domain::ball(ParaVector(2), 1.0);
  Multivector c(2);
  c[0] = 1.0;
  c[1] = 2.0;
  BoundaryData data;
  data.phi = [c](const ParaVector&) { return c; };
  const std::vector<ParaVector> pts{ParaVector(2)};
  const auto est = solve_dirichlet(ball, data, pts, 500, 2e-4, 5);
  REQUIRE(est.size() == 1);
  CHECK(est[0].value.mean[0] == 1.0);
  CHECK(est[0].value.mean[1] == 2.0);
  for (double s : est[0].value.stderr_) CHECK(s == 0.0);
  CHECK(est[0].mean_steps == 1.0);
}

TEST_CASE("estimator is bitwise linear under doubling of the data") {
  const Domain ball = Domain::ball(ParaVector(2), 1.0);
  BoundaryData phi, phi2;
  phi.phi = [](const ParaVector& y) { return Multivector::scalar(2, y[1] * y[2]); };
  phi2.phi = [](const ParaVector& y) { return Multivector::scalar(2, 2.0 * y[1] * y[2]); };
  ParaVector x(2);
  x[1] = 0.3;
  const std::vector<ParaVector> pts{x};
  const auto a = solve_dirichlet(ball, phi, pts, 4000, 2e-4, 6);
  const auto b = solve_dirichlet(ball, phi2, pts, 4000, 2e-4, 6);
  for (std::size_t k = 0; k < a[0].value.mean.size(); ++k)
    CHECK(b[0].value.mean[k] == 2.0 * a[0].value.mean[k]);
}

TEST_CASE("solver agrees with a known monogenic extension") {
  const Fixture& z1 = find_fixture("z1");
  const Domain ball = Domain::ball(ParaVector(2), 1.0);
  BoundaryData data;
  data.phi = [&](const ParaVector& y) { return z1.field.eval(y); };
  ParaVector x(2);
  x[0] = 0.2;
  x[1] = -0.4;
  const std::vector<ParaVector> pts{x};
  const auto est = solve_dirichlet(ball, data, pts, 20000, 2e-4, 7, 2);
  const Multivector truth = z1.field.eval(x);
  for (std::size_t k = 0; k < est[0].value.mean.size(); ++k)
    CHECK(std::abs(est[0].value.mean[k] - truth[static_cast<BladeIndex>(k)]) <=
          3.0 * est[0].value.stderr_[k] + 1e-12);
}

TEST_CASE("solver input validation") {
  const Domain ball = Domain::ball(ParaVector(1), 1.0);
  BoundaryData data;
  data.phi = [](const ParaVector&) { return Multivector::scalar(1, 1.0); };
  CHECK_THROWS_AS(solve_dirichlet(ball, data, {}, 100, 1e-4, 1), std::invalid_argument);
  const std::vector<ParaVector> pts{ParaVector(1)};
  CHECK_THROWS_AS(solve_dirichlet(ball, data, pts, 0, 1e-4, 1), std::invalid_argument);
}

TEST_CASE("cone hitting probability basics") {
  // A wider absorbing cone makes escape to radius h less likely.
  const ProbEstimate wide = cone_hitting_probability(3.0, 1.0, 1, 200, 11);
  const ProbEstimate narrow = cone_hitting_probability(0.5, 1.0, 1, 200, 11);
  CHECK(narrow.p > wide.p);
  CHECK(wide.n == 200);
  CHECK_THROWS_AS(cone_hitting_probability(0.0, 1.0, 1, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(cone_hitting_probability(1.0, 1.0, 0, 10, 1), std::invalid_argument);
}

TEST_CASE("hyperplane survival matches the reflection closed form") {
  const std::vector<double> t_grid{1.0, 4.0};
  const auto surv = liouville_survival(1.0, t_grid, 20000, 13);
  REQUIRE(surv.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const double truth = 2.0 * norm_cdf(1.0 / std::sqrt(t_grid[i])) - 1.0;
    CHECK(std::abs(surv[i].p - truth) <= 3.0 * surv[i].stderr_);
  }
  CHECK(surv[0].p > surv[1].p);
  const std::vector<double> bad{4.0, 1.0};
  CHECK_THROWS_AS(liouville_survival(1.0, bad, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(liouville_survival(-1.0, t_grid, 100, 1), std::invalid_argument);
}
