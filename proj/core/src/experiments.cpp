#include "cliffmc/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cliffmc/algebra.hpp"
#include "cliffmc/dirichlet.hpp"
#include "cliffmc/fields.hpp"
#include "cliffmc/fixtures.hpp"
#include "cliffmc/ito.hpp"
#include "cliffmc/process.hpp"
#include "cliffmc/rng.hpp"
#include "cliffmc/serialize.hpp"
#include "cliffmc/stats.hpp"

namespace cliffmc {

namespace {

using nlohmann::json;

// ---------- param handling ----------

void validate_params(const ExperimentSpec& spec, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : spec.params) {
    bool ok = false;
    for (const char* a : allowed)
      if (k == a) ok = true;
    if (!ok)
      throw std::invalid_argument("unknown param '" + k + "' for kind '" + spec.kind + "'");
  }
}

double p_dbl(const ExperimentSpec& spec, const std::string& key, double def) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end()) return def;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("param '" + key + "': not a number: " + it->second);
  }
  if (pos != it->second.size())
    throw std::invalid_argument("param '" + key + "': not a number: " + it->second);
  return v;
}

std::size_t p_sz(const ExperimentSpec& spec, const std::string& key, std::size_t def) {
  const double v = p_dbl(spec, key, static_cast<double>(def));
  if (v < 0.0 || v != std::floor(v))
    throw std::invalid_argument("param '" + key + "': expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

int p_int(const ExperimentSpec& spec, const std::string& key, int def) {
  return static_cast<int>(p_sz(spec, key, static_cast<std::size_t>(def)));
}

// ---------- report plumbing ----------

struct Checker {
  json checks = json::array();
  std::vector<std::string> failures;

  void record(const std::string& name, bool ok, json detail = json::object()) {
    detail["check"] = name;
    detail["pass"] = ok;
    checks.push_back(std::move(detail));
    if (!ok) failures.push_back(name);
  }
};

ExperimentResult finish(const ExperimentSpec& spec, Checker& ck, json body) {
  ExperimentResult r;
  r.kind = spec.kind;
  r.pass = ck.failures.empty();
  r.failures = ck.failures;
  body["kind"] = spec.kind;
  body["seed"] = spec.seed;
  body["pass"] = r.pass;
  body["failures"] = r.failures;
  body["checks"] = std::move(ck.checks);
  r.report_json = body.dump(2) + "\n";
  return r;
}

json mv_json(const Multivector& m) { return json::parse(to_json(m)); }
json est_json(const MCEstimate& e) { return json::parse(to_json(e)); }

// ---------- shared numeric helpers ----------

// Brute-force blade sign: list the generators of a then b, sort the
// concatenation counting transpositions, then cancel equal adjacent pairs
// (each contributes one factor e_k^2 = -1).
int oracle_sign(BladeIndex a, BladeIndex b) {
  std::vector<int> seq;
  for (int k = 0; k < 32; ++k)
    if ((a >> k) & 1u) seq.push_back(k);
  for (int k = 0; k < 32; ++k)
    if ((b >> k) & 1u) seq.push_back(k);
  int sign = 1;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
      if (seq[i] > seq[i + 1]) {
        std::swap(seq[i], seq[i + 1]);
        sign = -sign;
        moved = true;
      }
  }
  for (std::size_t i = 0; i + 1 < seq.size();) {
    if (seq[i] == seq[i + 1]) {
      sign = -sign;
      seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(i),
                seq.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      if (i > 0) --i;
    } else {
      ++i;
    }
  }
  return sign;
}

ParaVector random_point(int n, double lo, double hi, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(lo, hi);
  ParaVector x(n);
  for (int i = 0; i <= n; ++i) x[i] = u(eng);
  return x;
}

std::vector<ParaVector> random_points(int n, std::size_t count, double lo, double hi,
                                      std::uint64_t seed) {
  auto eng = make_engine(seed);
  std::vector<ParaVector> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(random_point(n, lo, hi, eng));
  return pts;
}

Multivector random_mv(int n, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector m(n);
  for (std::size_t i = 0; i < m.size(); ++i) m[static_cast<BladeIndex>(i)] = u(eng);
  return m;
}

double max_coeff_diff(const Multivector& a, const Multivector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[static_cast<BladeIndex>(i)] - b[static_cast<BladeIndex>(i)]));
  return d;
}

ProcessPath fixture_path(const Fixture& fx, std::size_t n_steps, std::uint64_t seed) {
  return sample_bm(PathConfig(fx.dim, ParaVector(fx.dim), 1.0, n_steps, seed));
}

// ---------- algebra-selftest ----------

ExperimentResult exp_algebra(const ExperimentSpec& spec) {
  validate_params(spec, {"n", "n_random"});
  const int n_max = p_int(spec, "n", 8);
  const std::size_t n_random = p_sz(spec, "n_random", 50);
  if (n_max < 1 || n_max > 8)
    throw std::invalid_argument("algebra-selftest: n must be in 1..8");

  Checker ck;
  json body;

  // Exhaustive sign oracle, all dims up to n_max.
  std::size_t pairs = 0, mismatches = 0;
  for (int n = 1; n <= n_max; ++n) {
    const BladeIndex count = BladeIndex{1} << n;
    for (BladeIndex a = 0; a < count; ++a)
      for (BladeIndex b = 0; b < count; ++b) {
        const BladeProduct bp = blade_product(a, b, n);
        if (bp.blade != (a ^ b) || bp.sign != static_cast<double>(oracle_sign(a, b)))
          ++mismatches;
        ++pairs;
      }
  }
  ck.record("blade-sign-oracle-exhaustive", mismatches == 0,
            {{"pairs", pairs}, {"mismatches", mismatches}, {"n_max", n_max}});

  // Generator relations, exact equality.
  bool anti_ok = true;
  for (int j = 1; j <= n_max; ++j)
    for (int k = 1; k <= n_max; ++k) {
      const Multivector ej = Multivector::basis(n_max, BladeIndex{1} << (j - 1));
      const Multivector ek = Multivector::basis(n_max, BladeIndex{1} << (k - 1));
      const Multivector lhs = ej * ek + ek * ej;
      const Multivector rhs = Multivector::scalar(n_max, j == k ? -2.0 : 0.0);
      if (max_coeff_diff(lhs, rhs) != 0.0) anti_ok = false;
    }
  ck.record("generator-anticommutation-exact", anti_ok);

  auto eng = make_engine(substream_seed(spec.seed, 11));
  double max_assoc = 0.0, max_conj_anti = 0.0;
  bool conj_inv_ok = true;
  for (int n : {2, 3, std::min(n_max, 6)}) {
    for (std::size_t t = 0; t < n_random; ++t) {
      const Multivector a = random_mv(n, eng), b = random_mv(n, eng), c = random_mv(n, eng);
      const double scale = 1.0 + a.norm() * b.norm() * c.norm();
      max_assoc = std::max(max_assoc, ((a * b) * c - a * (b * c)).norm() / scale);
      max_conj_anti =
          std::max(max_conj_anti, ((a * b).conj() - b.conj() * a.conj()).norm() / scale);
      if (max_coeff_diff(a.conj().conj(), a) != 0.0) conj_inv_ok = false;
    }
  }
  ck.record("associativity", max_assoc <= 1e-12, {{"max_rel_error", max_assoc}});
  ck.record("conjugation-involution-exact", conj_inv_ok);
  ck.record("conjugation-anti-automorphism", max_conj_anti <= 1e-12,
            {{"max_rel_error", max_conj_anti}});

  // Para-vector norm property: x xbar = xbar x = |x|^2.
  double max_norm_gap = 0.0;
  for (std::size_t t = 0; t < n_random; ++t) {
    const ParaVector x = random_point(3, -2.0, 2.0, eng);
    const Multivector m = x.to_multivector();
    const Multivector target = Multivector::scalar(3, x.norm() * x.norm());
    max_norm_gap = std::max({max_norm_gap, (m * m.conj() - target).norm(),
                             (m.conj() * m - target).norm()});
  }
  ck.record("paravector-norm-identity", max_norm_gap <= 1e-12,
            {{"max_error", max_norm_gap}});

  // Discrete Clifford inner product: <e_1, e_1> with unit total weight = 1.
  {
    const Multivector e1 = Multivector::basis(2, 1);
    const std::array<Multivector, 2> f{e1, e1};
    const std::array<double, 2> w{0.5, 0.5};
    const Multivector ip = clifford_inner_product(f, f, w);
    ck.record("inner-product-unit-blade",
              max_coeff_diff(ip, Multivector::scalar(2, 1.0)) == 0.0,
              {{"value", mv_json(ip)}});
  }

  // JSON round trip, exact.
  {
    bool rt_ok = true;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::size_t t = 0; t < 20; ++t) {
      Multivector m = random_mv(4, eng);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (u01(eng) < 0.5) m[static_cast<BladeIndex>(i)] = 0.0;
      if (max_coeff_diff(multivector_from_json(to_json(m)), m) != 0.0) rt_ok = false;
    }
    ck.record("json-round-trip-exact", rt_ok);
  }

  return finish(spec, ck, std::move(body));
}

// ---------- monogenicity ----------

ExperimentResult exp_monogenicity(const ExperimentSpec& spec) {
  validate_params(spec, {"n_points", "h", "n_quad"});
  const std::size_t n_points = p_sz(spec, "n_points", 100);
  const double h = p_dbl(spec, "h", 1e-3);
  const std::size_t n_quad = p_sz(spec, "n_quad", 200000);

  Checker ck;
  json body;
  json residuals = json::object();

  // Hypercomplex variables z_k for n <= 4: FD residual <= 1e-8.
  double max_zk = 0.0;
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= n; ++k) {
      const auto pts = random_points(n, 50, -2.0, 2.0,
                                     substream_seed(spec.seed, 200 + 10 * n + k));
      const auto rep = monogenicity_check(fueter_variable(k, n), pts, h, 1e-8);
      max_zk = std::max(max_zk, rep.max_residual);
    }
  ck.record("fueter-variables-monogenic", max_zk <= 1e-8, {{"max_residual", max_zk}});

  // Registry fixtures: measured status must match the declared one.
  for (const Fixture& fx : fixture_registry()) {
    const auto pts = random_points(fx.dim, n_points, -2.0, 2.0,
                                   substream_seed(spec.seed, 300 + fx.dim));
    const auto rep = monogenicity_check(fx.field, pts, h, 1e-6);
    residuals[fx.name] = rep.max_residual;
    if (fx.expect_monogenic)
      ck.record("fixture-" + fx.name + "-monogenic", rep.pass,
                {{"max_residual", rep.max_residual}});
    else
      ck.record("fixture-" + fx.name + "-nonmonogenic", rep.max_residual > 1e-2,
                {{"max_residual", rep.max_residual}});
  }
  body["fixture_fd_residuals"] = residuals;

  // FD order check on a degree-3 fixture with analytic gradient.
  {
    const Fixture& fx = find_fixture("z1z1z2");
    const auto pts = random_points(fx.dim, 10, -2.0, 2.0, substream_seed(spec.seed, 77));
    const std::array<double, 2> hs{1e-1, 1e-2};
    std::array<double, 2> errs{0.0, 0.0};
    for (std::size_t hi = 0; hi < hs.size(); ++hi)
      for (const ParaVector& x : pts)
        for (int i = 0; i <= fx.dim; ++i)
          errs[hi] = std::max(errs[hi], (fd_partial(fx.field, x, i, hs[hi]) -
                                         fx.field.grad[static_cast<std::size_t>(i)](x))
                                            .norm());
    const double slope = std::log(errs[0] / errs[1]) / std::log(hs[0] / hs[1]);
    ck.record("fd-second-order-accuracy", slope >= 1.8 && slope <= 2.2,
              {{"slope", slope}, {"errors", errs}});
  }

  // Mean value property for monogenic fixtures, componentwise 3 sigma.
  struct MvCase {
    const char* name;
    std::vector<double> center;
    double radius;
  };
  const std::vector<MvCase> cases{{"z1", {0.0, 0.0, 0.0}, 1.0},
                                  {"z1z2", {0.3, 0.2, -0.1}, 0.5},
                                  {"z1z1z2", {0.1, -0.2, 0.4}, 0.8}};
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const Fixture& fx = find_fixture(cases[ci].name);
    const MeanValueResult mv = mean_value_check(fx.field, ParaVector(cases[ci].center),
                                                cases[ci].radius, n_quad,
                                                substream_seed(spec.seed, 400 + ci));
    bool ok = true;
    for (std::size_t c = 0; c < mv.est.mean.size(); ++c)
      if (std::abs(mv.est.mean[c] - mv.center_val[static_cast<BladeIndex>(c)]) >
          3.0 * mv.est.stderr_[c] + 1e-12)
        ok = false;
    ck.record(std::string("mean-value-") + cases[ci].name, ok,
              {{"gap", mv.gap}, {"estimate", est_json(mv.est)},
               {"center_value", mv_json(mv.center_val)}});
  }

  // Negative control with an exact oracle: the sphere average of |x|^2
  // over a radius-r sphere about c is |c|^2 + r^2, so the mean-value gap
  // is r^2, not 0.
  {
    const Fixture& fx = find_fixture("abs2");
    const ParaVector c(std::vector<double>{0.2, -0.1, 0.3});
    const double r = 0.7;
    const MeanValueResult mv =
        mean_value_check(fx.field, c, r, n_quad, substream_seed(spec.seed, 499));
    const double expected_avg = c.norm() * c.norm() + r * r;
    const bool oracle_ok =
        std::abs(mv.est.mean[0] - expected_avg) <= 3.0 * mv.est.stderr_[0] + 1e-12;
    ck.record("mean-value-negative-control", oracle_ok && mv.gap > 0.5 * r * r,
              {{"gap", mv.gap}, {"expected_gap", r * r},
               {"sphere_avg", mv.est.mean[0]}, {"expected_avg", expected_avg}});
  }

  return finish(spec, ck, std::move(body));
}

// ---------- bm-diagnostics ----------

ExperimentResult exp_bm(const ExperimentSpec& spec) {
  validate_params(spec, {"n_paths", "dim", "qv_paths", "qv_steps", "hit_paths", "hit_steps"});
  const std::size_t n_paths = p_sz(spec, "n_paths", 100000);
  const int dim = p_int(spec, "dim", 2);
  const std::size_t qv_paths = p_sz(spec, "qv_paths", 200);
  const std::size_t qv_steps = p_sz(spec, "qv_steps", 10000);
  const std::size_t hit_paths = p_sz(spec, "hit_paths", 2500);
  const std::size_t hit_steps = p_sz(spec, "hit_steps", 8000);

  Checker ck;
  json body;

  // Determinism: identical config, bit-identical path; different seed differs.
  {
    const PathConfig c(dim, ParaVector(dim), 1.0, 64, substream_seed(spec.seed, 1));
    const ProcessPath a = sample_bm(c), b = sample_bm(c);
    bool same = a.times == b.times;
    for (std::size_t k = 0; same && k < a.states.size(); ++k)
      for (int i = 0; i <= dim; ++i)
        if (a.states[k][i] != b.states[k][i]) same = false;
    ck.record("determinism-bit-identical", same);
    PathConfig c2 = c;
    c2.seed = substream_seed(spec.seed, 2);
    const ProcessPath d = sample_bm(c2);
    ck.record("determinism-seed-sensitivity", d.states.back()[0] != a.states.back()[0]);
  }

  // Increment law + independence, pooled over a streamed ensemble.
  {
    const std::size_t n_steps = 16;
    const double dt = 1.0 / static_cast<double>(n_steps);
    const std::uint64_t seed_inc = substream_seed(spec.seed, 3);
    std::vector<StatAccumulator> comp(static_cast<std::size_t>(dim) + 1);
    std::vector<StatAccumulator> cross;  // pairs (i, j), i < j
    cross.resize(static_cast<std::size_t>(dim * (dim + 1)) / 2);
    std::vector<StatAccumulator> disjoint(static_cast<std::size_t>(dim) + 1);
    for (std::size_t w = 0; w < n_paths; ++w) {
      const ProcessPath p =
          sample_bm(PathConfig(dim, ParaVector(dim), 1.0, n_steps, substream_seed(seed_inc, w)));
      for (std::size_t k = 0; k < n_steps; ++k) {
        std::size_t pair = 0;
        for (int i = 0; i <= dim; ++i) {
          const double di = p.states[k + 1][i] - p.states[k][i];
          comp[static_cast<std::size_t>(i)].add(di);
          for (int j = i + 1; j <= dim; ++j)
            cross[pair++].add(di * (p.states[k + 1][j] - p.states[k][j]));
        }
      }
      const std::size_t mid = n_steps / 2;
      for (int i = 0; i <= dim; ++i)
        disjoint[static_cast<std::size_t>(i)].add(
            (p.states[mid][i] - p.states[0][i]) *
            (p.states[n_steps][i] - p.states[mid][i]));
    }
    bool mean_ok = true, var_ok = true, cross_ok = true, disj_ok = true;
    json inc_detail = json::array();
    for (const auto& a : comp) {
      const ScalarStat s = a.stat();
      // Sample variance from the same accumulator pair.
      const double var = s.stderr_ * s.stderr_ * static_cast<double>(s.count);
      if (std::abs(s.mean) > 3.0 * s.stderr_) mean_ok = false;
      const double band = 4.0 * dt * std::sqrt(2.0 / static_cast<double>(s.count - 1));
      if (std::abs(var - dt) > band) var_ok = false;
      inc_detail.push_back({{"mean", s.mean}, {"stderr", s.stderr_}, {"variance", var},
                            {"dt", dt}, {"band", band}});
    }
    for (const auto& a : cross) {
      const ScalarStat s = a.stat();
      if (std::abs(s.mean) > 3.0 * s.stderr_) cross_ok = false;
    }
    for (const auto& a : disjoint) {
      const ScalarStat s = a.stat();
      if (std::abs(s.mean) > 3.0 * s.stderr_) disj_ok = false;
    }
    ck.record("increment-mean-zero", mean_ok, {{"components", inc_detail}});
    ck.record("increment-variance-band", var_ok);
    ck.record("increment-cross-component-uncorrelated", cross_ok);
    ck.record("increment-disjoint-interval-independence", disj_ok);
  }

  // Quadratic covariation at t = 1: ensemble mean within 3 sigma of delta_ij.
  {
    const std::uint64_t seed_qv = substream_seed(spec.seed, 4);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i <= dim; ++i)
      for (int j = i; j <= dim; ++j) pairs.emplace_back(i, j);
    std::vector<StatAccumulator> acc(pairs.size());
    for (std::size_t w = 0; w < qv_paths; ++w) {
      const ProcessPath p = sample_bm(
          PathConfig(dim, ParaVector(dim), 1.0, qv_steps, substream_seed(seed_qv, w)));
      for (std::size_t pi = 0; pi < pairs.size(); ++pi)
        acc[pi].add(quadratic_covariation(p, pairs[pi].first, pairs[pi].second).back());
    }
    bool qv_ok = true;
    json qv_detail = json::array();
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      const ScalarStat s = acc[pi].stat();
      const double target = pairs[pi].first == pairs[pi].second ? 1.0 : 0.0;
      if (std::abs(s.mean - target) > 3.0 * s.stderr_) qv_ok = false;
      qv_detail.push_back({{"i", pairs[pi].first}, {"j", pairs[pi].second},
                           {"mean", s.mean}, {"stderr", s.stderr_}, {"target", target}});
    }
    ck.record("quadratic-covariation-delta", qv_ok, {{"pairs", qv_detail}});

    // RMS error decreases monotonically as the grid is refined.
    std::vector<double> rms;
    for (std::size_t steps : {std::size_t{100}, std::size_t{1000}, std::size_t{10000}}) {
      ChunkedSum sq;
      for (std::size_t w = 0; w < 100; ++w) {
        const ProcessPath p = sample_bm(PathConfig(
            dim, ParaVector(dim), 1.0, steps, substream_seed(seed_qv, 1000 + w)));
        const double e = quadratic_covariation(p, 0, 0).back() - 1.0;
        sq.add(e * e);
      }
      rms.push_back(std::sqrt(sq.total() / 100.0));
    }
    ck.record("quadratic-covariation-rms-monotone", rms[0] > rms[1] && rms[1] > rms[2],
              {{"rms", rms}});
  }

  // Martingale suite: streamed, N paths, grid of 8 steps, s = t/2.
  {
    const std::size_t n_steps = 8, idx_s = 4, idx_t = 8;
    const double t_s = 0.5, t_t = 1.0;
    const std::uint64_t seed_m = substream_seed(spec.seed, 5);
    const auto functionals = default_test_functionals();
    auto gen = [&](const std::function<Multivector(double, const ParaVector&)>& fn) {
      return [&, fn](std::size_t i) {
        return map_path(
            sample_bm(PathConfig(dim, ParaVector(dim), t_t, n_steps, substream_seed(seed_m, i))),
            fn);
      };
    };

    const auto rep_b = martingale_test(
        n_paths, gen([](double, const ParaVector& x) { return x.to_multivector(); }),
        idx_s, idx_t, functionals);
    ck.record("martingale-bm", rep_b.pass);

    // Clifford square of a para-vector BM: E[(dB)^2] = (1-n) dt, so the
    // martingale compensator is (1-n)t.  The printed compensator t is only
    // correct componentwise; both variants are measured below.
    const double comp_rate = 1.0 - static_cast<double>(dim);
    const auto rep_sq = martingale_test(
        n_paths, gen([comp_rate](double t, const ParaVector& x) {
          Multivector m = x.to_multivector() * x.to_multivector();
          m[0] -= comp_rate * t;
          return m;
        }),
        idx_s, idx_t, functionals);
    ck.record("martingale-clifford-square-compensated", rep_sq.pass,
              {{"compensator_rate", comp_rate}});

    const auto rep_comp = martingale_test(
        n_paths, gen([dim](double t, const ParaVector& x) {
          return Multivector::scalar(dim, x[0] * x[0] - t);
        }),
        idx_s, idx_t, functionals);
    ck.record("martingale-component-square", rep_comp.pass);

    // Literal B^2 - t: for n >= 1 its scalar component drifts at rate -n.
    const auto rep_lit = martingale_test(
        n_paths, gen([](double t, const ParaVector& x) {
          Multivector m = x.to_multivector() * x.to_multivector();
          m[0] -= t;
          return m;
        }),
        idx_s, idx_t, functionals);
    const double drift_pred = -static_cast<double>(dim) * (t_t - t_s);
    const auto& lit_one = rep_lit.entries[0].product;
    ck.record("martingale-literal-square-drift-detected",
              !rep_lit.pass &&
                  std::abs(lit_one.mean[0] - drift_pred) <= 3.0 * lit_one.stderr_[0],
              {{"measured_scalar_drift", lit_one.mean[0]}, {"predicted", drift_pred}});

    const auto rep_drift = martingale_test(
        n_paths, gen([](double t, const ParaVector& x) {
          Multivector m = x.to_multivector();
          m[1] += t;
          return m;
        }),
        idx_s, idx_t, functionals);
    const auto& dr_one = rep_drift.entries[0].product;
    ck.record("martingale-drifted-control-fails",
              !rep_drift.pass &&
                  std::abs(dr_one.mean[1] - (t_t - t_s)) <= 3.0 * dr_one.stderr_[1],
              {{"measured_e1_drift", dr_one.mean[1]}, {"predicted", t_t - t_s}});
  }

  // First hitting of {x_0 >= 1} by t_max = 4: reflection-principle oracle.
  {
    const std::uint64_t seed_h = substream_seed(spec.seed, 6);
    std::size_t hits = 0;
    for (std::size_t w = 0; w < hit_paths; ++w) {
      const ProcessPath p = sample_bm(
          PathConfig(1, ParaVector(1), 4.0, hit_steps, substream_seed(seed_h, w)));
      const StoppedPath st = first_hit(p, [](const ParaVector& x) { return x[0] >= 1.0; });
      if (st.reason == StopReason::kBoundaryHit) ++hits;
    }
    const double p_hat = static_cast<double>(hits) / static_cast<double>(hit_paths);
    const double p_true = 2.0 * (1.0 - norm_cdf(0.5));
    const double se = std::sqrt(p_true * (1.0 - p_true) / static_cast<double>(hit_paths));
    ck.record("first-hit-reflection-oracle", std::abs(p_hat - p_true) <= 3.0 * se,
              {{"estimate", p_hat}, {"oracle", p_true}, {"stderr", se}});
  }

  // Martingale-space norm: Doob sandwich 2T <= E[sup |M|^2] <= 8T for a
  // dim-1 para-vector BM, and monotonicity in the horizon.
  {
    const auto paths = sample_bm_ensemble(
        PathConfig(1, ParaVector(1), 1.0, 100, substream_seed(spec.seed, 7)), 500,
        spec.threads);
    const double est_full = mart_norm_estimate(paths);
    std::vector<ProcessPath> half = paths;
    for (ProcessPath& p : half) {
      p.times.resize(51);
      p.states.erase(p.states.begin() + 51, p.states.end());
      p.martingale_part.erase(p.martingale_part.begin() + 51, p.martingale_part.end());
      p.fv_part.erase(p.fv_part.begin() + 51, p.fv_part.end());
    }
    const double est_half = mart_norm_estimate(half);
    ck.record("mart-norm-doob-sandwich",
              est_full >= std::sqrt(2.0) && est_full <= std::sqrt(8.0),
              {{"estimate", est_full}, {"bracket", {std::sqrt(2.0), std::sqrt(8.0)}}});
    ck.record("mart-norm-monotone-in-horizon", est_half > 0.0 && est_half < est_full,
              {{"half_horizon", est_half}, {"full_horizon", est_full}});
  }

  return finish(spec, ck, std::move(body));
}

// ---------- ito-residual ----------

TimeField time_field_linear_x1(int n) {
  TimeField f;
  f.dim = n;
  f.eval = [n](double, const ParaVector& x) { return Multivector::scalar(n, x[1]); };
  f.dt = [n](double, const ParaVector&) { return Multivector(n); };
  f.dx.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    f.dx[static_cast<std::size_t>(i)] = [n, i](double, const ParaVector&) {
      return Multivector::scalar(n, i == 1 ? 1.0 : 0.0);
    };
  f.dxx.assign(static_cast<std::size_t>(n) + 1,
               std::vector<std::function<Multivector(double, const ParaVector&)>>(
                   static_cast<std::size_t>(n) + 1,
                   [n](double, const ParaVector&) { return Multivector(n); }));
  return f;
}

TimeField time_field_t_x1(int n) {
  TimeField f = time_field_linear_x1(n);
  f.eval = [n](double t, const ParaVector& x) { return Multivector::scalar(n, t * x[1]); };
  f.dt = [n](double, const ParaVector& x) { return Multivector::scalar(n, x[1]); };
  f.dx[1] = [n](double t, const ParaVector&) { return Multivector::scalar(n, t); };
  return f;
}

TimeField time_field_abs2(int n) {
  const CliffordField& base = find_fixture("abs2").field;
  TimeField f;
  f.dim = n;
  f.eval = [&base](double, const ParaVector& x) { return base.eval(x); };
  f.dt = [n](double, const ParaVector&) { return Multivector(n); };
  f.dx.resize(static_cast<std::size_t>(n) + 1);
  f.dxx.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    f.dx[static_cast<std::size_t>(i)] = [&base, i](double, const ParaVector& x) {
      return base.grad[static_cast<std::size_t>(i)](x);
    };
    f.dxx[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
      f.dxx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          [&base, i, j](double, const ParaVector& x) {
            return base.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](x);
          };
  }
  return f;
}

ExperimentResult exp_ito_residual(const ExperimentSpec& spec) {
  validate_params(spec, {"n_paths", "n_steps", "ensemble_paths"});
  const std::size_t n_paths = p_sz(spec, "n_paths", 5);
  const std::size_t n_steps = p_sz(spec, "n_steps", 200);
  const std::size_t ensemble_paths = p_sz(spec, "ensemble_paths", 100000);

  Checker ck;
  json body;

  // Linear monogenic fixture: residual is pure roundoff.
  {
    const Fixture& z1 = find_fixture("z1");
    double worst = 0.0;
    for (std::size_t w = 0; w < n_paths; ++w) {
      const auto rep = clifford_ito_residual(
          z1.field, fixture_path(z1, n_steps, substream_seed(spec.seed, 10 + w)));
      worst = std::max(worst, rep.report.residual_norm);
    }
    ck.record("linear-fixture-residual-roundoff", worst <= 1e-12, {{"max_residual", worst}});
  }

  // Regrouping identity: Clifford RHS == componentwise classical RHS on
  // every fixture, path, covariation mode and multiplication order.
  {
    double worst = 0.0;
    std::string worst_case;
    const auto& reg = fixture_registry();
    for (std::size_t fi = 0; fi < reg.size(); ++fi)
      for (std::size_t w = 0; w < n_paths; ++w) {
        const ProcessPath path =
            fixture_path(reg[fi], n_steps, substream_seed(spec.seed, 100 * (fi + 1) + w));
        for (CovariationMode mode :
             {CovariationMode::kRawProducts, CovariationMode::kBrownianDelta})
          for (FormOrder order : {FormOrder::kFormLeft, FormOrder::kFormRight}) {
            const auto rep = clifford_ito_residual(reg[fi].field, path, mode,
                                                   DzSign::kMinus, order);
            if (rep.vs_classical > worst) {
              worst = rep.vs_classical;
              worst_case = reg[fi].name;
            }
          }
      }
    ck.record("clifford-vs-classical-regrouping", worst <= 1e-10,
              {{"max_gap", worst}, {"worst_fixture", worst_case}});
  }

  // The published +e_k sign variant does not vanish for monogenic f.
  {
    const Fixture& z1 = find_fixture("z1");
    double worst = 0.0;
    for (std::size_t w = 0; w < n_paths; ++w) {
      const auto rep = clifford_ito_residual(
          z1.field, fixture_path(z1, n_steps, substream_seed(spec.seed, 20 + w)),
          CovariationMode::kRawProducts, DzSign::kPlus);
      worst = std::max(worst, rep.report.residual_norm);
    }
    ck.record("plus-sign-variant-nonvanishing", worst > 0.05, {{"max_residual", worst}});
  }

  // Classical formula examples.
  {
    const ProcessPath path = sample_bm(
        PathConfig(2, ParaVector(2), 1.0, n_steps, substream_seed(spec.seed, 30)));
    const auto lin = classical_ito_residual(time_field_linear_x1(2), path);
    ck.record("classical-linear-telescopes", lin.residual_norm <= 1e-12,
              {{"residual", lin.residual_norm}});
    const auto drift = classical_ito_residual(time_field_t_x1(2), path);
    ck.record("classical-drift-coupling-bounded", drift.residual_norm <= 10.0 * drift.dt,
              {{"residual", drift.residual_norm}, {"dt", drift.dt}});
    const auto quad = classical_ito_residual(time_field_abs2(2), path,
                                             CovariationMode::kRawProducts);
    ck.record("classical-quadratic-exact-raw-covariation", quad.residual_norm <= 1e-9,
              {{"residual", quad.residual_norm}});
  }

  // E[|B(1)|^2] - |B(0)|^2 = (n+1) t, streamed ensemble.
  {
    const int dim = 2;
    const ParaVector start(std::vector<double>{0.5, -0.3, 0.2});
    const CliffordField& f = find_fixture("abs2").field;
    const std::uint64_t seed_e = substream_seed(spec.seed, 40);
    StatAccumulator acc;
    for (std::size_t w = 0; w < ensemble_paths; ++w) {
      const ProcessPath p = sample_bm(PathConfig(dim, start, 1.0, 1, substream_seed(seed_e, w)));
      acc.add(f.eval(p.states.back()).sc() - f.eval(p.states.front()).sc());
    }
    const ScalarStat s = acc.stat();
    const double target = static_cast<double>(dim) + 1.0;
    ck.record("expected-abs-square-growth", std::abs(s.mean - target) <= 3.0 * s.stderr_,
              {{"mean", s.mean}, {"stderr", s.stderr_}, {"target", target}});
  }

  // Ito integral identity 2 int B dB = B^2 - t, ensemble mean of the gap.
  {
    const std::uint64_t seed_i = substream_seed(spec.seed, 50);
    StatAccumulator acc;
    for (std::size_t w = 0; w < 2000; ++w) {
      const ProcessPath p =
          sample_bm(PathConfig(1, ParaVector(1), 1.0, 100, substream_seed(seed_i, w)));
      std::vector<double> driver(p.states.size());
      for (std::size_t k = 0; k < p.states.size(); ++k) driver[k] = p.states[k][0];
      const Multivector integral = ito_integral(
          driver, [](std::size_t, std::span<const double> prefix) {
            return Multivector::scalar(1, prefix.back());
          });
      const double b_t = driver.back();
      acc.add(2.0 * integral.sc() - (b_t * b_t - 1.0));
    }
    const ScalarStat s = acc.stat();
    ck.record("ito-integral-square-identity", std::abs(s.mean) <= 3.0 * s.stderr_,
              {{"mean", s.mean}, {"stderr", s.stderr_}});
  }

  // Monogenic reduction: z_1 exactly, x_0 rejected by the precheck.
  {
    const Fixture& z1 = find_fixture("z1");
    const ProcessPath path = fixture_path(z1, n_steps, substream_seed(spec.seed, 60));
    const auto red = monogenic_reduction_residual(z1.field, path);
    ck.record("monogenic-reduction-linear-roundoff", red.report.residual_norm <= 1e-12,
              {{"residual", red.report.residual_norm},
               {"max_dirac_term", red.max_dirac_term},
               {"max_laplacian", red.max_laplacian}});

    const Fixture& z1z1 = find_fixture("z1z1");
    const ProcessPath path2 = fixture_path(z1z1, n_steps, substream_seed(spec.seed, 61));
    const auto red2 = monogenic_reduction_residual(z1z1.field, path2);
    const auto full2 = clifford_ito_residual(z1z1.field, path2,
                                             CovariationMode::kBrownianDelta);
    ck.record("monogenic-reduction-equals-full",
              (red2.report.rhs - full2.report.rhs).norm() <= 1e-10,
              {{"rhs_gap", (red2.report.rhs - full2.report.rhs).norm()}});

    bool rejected = false;
    try {
      monogenic_reduction_residual(find_fixture("x0").field, path);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    ck.record("monogenic-reduction-rejects-nonmonogenic", rejected);
  }

  // d^2 = 0: the second-order form vanishes on antisymmetric increment
  // products.
  {
    auto eng = make_engine(substream_seed(spec.seed, 70));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (const char* name : {"z1z1z2", "abs2"}) {
      const Fixture& fx = find_fixture(name);
      const int n = fx.dim;
      for (std::size_t t = 0; t < 5; ++t) {
        std::vector<std::vector<double>> w(static_cast<std::size_t>(n) + 1,
                                           std::vector<double>(static_cast<std::size_t>(n) + 1,
                                                               0.0));
        for (int i = 0; i <= n; ++i)
          for (int j = i + 1; j <= n; ++j) {
            const double v = u(eng);
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -v;
          }
        const ParaVector x = random_point(n, -1.0, 1.0, eng);
        for (FormOrder order : {FormOrder::kFormLeft, FormOrder::kFormRight})
          worst = std::max(worst,
                           second_order_form(fx.field, x, w, DzSign::kMinus, order).norm());
      }
    }
    ck.record("second-order-form-antisymmetric-vanishes", worst <= 1e-10,
              {{"max_norm", worst}});
  }

  return finish(spec, ck, std::move(body));
}

// ---------- ito-scaling ----------

ExperimentResult exp_ito_scaling(const ExperimentSpec& spec) {
  validate_params(spec, {"fixture", "n_paths"});
  const auto it = spec.params.find("fixture");
  const Fixture& fx = find_fixture(it == spec.params.end() ? "z1z2" : it->second);
  const std::size_t n_paths = p_sz(spec, "n_paths", 1000);
  if (n_paths < 2) throw std::invalid_argument("ito-scaling: n_paths must be >= 2");

  Checker ck;
  json body;
  body["fixture"] = fx.name;

  const std::array<std::size_t, 3> grids{100, 1000, 10000};
  std::vector<double> log_dt, log_rms;
  std::ostringstream csv;
  csv.precision(17);
  csv << "n_steps,dt,rms_residual,slope_so_far\n";

  json rows = json::array();
  for (std::size_t gi = 0; gi < grids.size(); ++gi) {
    const std::size_t steps = grids[gi];
    const double dt = 1.0 / static_cast<double>(steps);
    const std::uint64_t seed_g = substream_seed(spec.seed, 500 + gi);
    std::vector<double> residuals(n_paths, 0.0);
    parallel_for(n_paths, spec.threads, [&](std::size_t w) {
      const auto rep = clifford_ito_residual(
          fx.field, fixture_path(fx, steps, substream_seed(seed_g, w)),
          CovariationMode::kBrownianDelta);
      residuals[w] = rep.report.residual_norm;
    });
    ChunkedSum sq;
    for (double r : residuals) sq.add(r * r);
    const double rms = std::sqrt(sq.total() / static_cast<double>(n_paths));
    log_dt.push_back(std::log(dt));
    log_rms.push_back(std::log(rms));

    csv << steps << "," << dt << "," << rms << ",";
    double slope = 0.0;
    if (log_dt.size() >= 2) {
      double mx = 0.0, my = 0.0;
      for (std::size_t i = 0; i < log_dt.size(); ++i) {
        mx += log_dt[i];
        my += log_rms[i];
      }
      mx /= static_cast<double>(log_dt.size());
      my /= static_cast<double>(log_dt.size());
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < log_dt.size(); ++i) {
        num += (log_dt[i] - mx) * (log_rms[i] - my);
        den += (log_dt[i] - mx) * (log_dt[i] - mx);
      }
      slope = num / den;
      csv << slope;
    }
    csv << "\n";
    rows.push_back({{"n_steps", steps}, {"dt", dt}, {"rms_residual", rms},
                    {"slope_so_far", log_dt.size() >= 2 ? json(slope) : json()}});
  }
  body["rows"] = rows;

  const double final_slope = rows.back()["slope_so_far"].get<double>();
  ck.record("rms-residual-slope-half", final_slope >= 0.35 && final_slope <= 0.65,
            {{"slope", final_slope}});

  // Reduction-vs-full agreement for the monogenic fixture on sample paths.
  if (fx.expect_monogenic) {
    double worst_rhs = 0.0, worst_res = 0.0;
    for (std::size_t w = 0; w < 5; ++w) {
      const ProcessPath path = fixture_path(fx, 1000, substream_seed(spec.seed, 900 + w));
      const auto red = monogenic_reduction_residual(fx.field, path);
      const auto full = clifford_ito_residual(fx.field, path, CovariationMode::kBrownianDelta);
      worst_rhs = std::max(worst_rhs, (red.report.rhs - full.report.rhs).norm());
      worst_res = std::max(worst_res, std::abs(red.report.residual_norm -
                                               full.report.residual_norm));
    }
    ck.record("reduction-matches-full-residual", worst_rhs <= 1e-10 && worst_res <= 1e-10,
              {{"max_rhs_gap", worst_rhs}, {"max_residual_gap", worst_res}});
  }

  ExperimentResult r = finish(spec, ck, std::move(body));
  r.csv = csv.str();
  r.csv_name = "ito_scaling.csv";
  return r;
}

// ---------- dirichlet ----------

ExperimentResult exp_dirichlet(const ExperimentSpec& spec) {
  validate_params(spec, {"n_walks", "eps"});
  const std::size_t n_walks = p_sz(spec, "n_walks", 100000);
  if (n_walks < 16) throw std::invalid_argument("dirichlet: n_walks must be >= 16");

  const int n = 2;
  const Domain domain = Domain::ball(ParaVector(n), 1.0);
  const double eps = p_dbl(spec, "eps", 1e-4 * domain.diameter());

  Checker ck;
  json body;
  body["eps_shell"] = eps;

  const std::vector<ParaVector> points{
      ParaVector(std::vector<double>{0.0, 0.0, 0.0}),
      ParaVector(std::vector<double>{0.3, 0.0, 0.0}),
      ParaVector(std::vector<double>{0.0, 0.4, 0.0}),
      ParaVector(std::vector<double>{-0.2, 0.1, 0.3}),
      ParaVector(std::vector<double>{0.1, -0.5, 0.2})};

  const CliffordField z1 = find_fixture("z1").field;
  const BoundaryData data_z1{[&z1](const ParaVector& y) { return z1.eval(y); }, z1};
  BoundaryData data_coord;
  data_coord.phi = [n](const ParaVector& y) { return Multivector::scalar(n, y[1]); };

  auto check_against = [&](const char* name, const BoundaryData& data,
                           const std::function<Multivector(const ParaVector&)>& truth,
                           std::uint64_t seed) {
    const auto ests = solve_dirichlet(domain, data, points, n_walks, eps, seed, spec.threads);
    bool ok = true;
    double max_sigma = 0.0;
    json detail = json::array();
    for (const auto& est : ests) {
      const Multivector t = truth(est.point);
      for (std::size_t c = 0; c < est.value.mean.size(); ++c) {
        const double gap = std::abs(est.value.mean[c] - t[static_cast<BladeIndex>(c)]);
        if (gap > 3.0 * est.value.stderr_[c] + 1e-12) ok = false;
        if (est.value.stderr_[c] > 0.0) max_sigma = std::max(max_sigma, gap / est.value.stderr_[c]);
      }
      detail.push_back({{"estimate", est_json(est.value)}, {"truth", mv_json(t)},
                        {"mean_steps", est.mean_steps}, {"censored", est.censored}});
    }
    body[std::string("estimates_") + name] = detail;
    ck.record(std::string("boundary-data-") + name + "-within-3-sigma", ok,
              {{"max_sigma_gap", max_sigma}});
    return ests;
  };

  const auto ests_z1 = check_against(
      "z1", data_z1, [&z1](const ParaVector& x) { return z1.eval(x); },
      substream_seed(spec.seed, 1));
  check_against(
      "coordinate", data_coord,
      [n](const ParaVector& x) { return Multivector::scalar(n, x[1]); },
      substream_seed(spec.seed, 2));

  // From the center the first inscribed sphere is the boundary itself.
  ck.record("center-single-step", ests_z1[0].mean_steps == 1.0,
            {{"mean_steps", ests_z1[0].mean_steps}});

  // Constant boundary data is reproduced exactly with zero stderr.
  {
    Multivector c(n);
    c[0] = 1.0;
    c[1] = 2.0;
    BoundaryData data_const;
    data_const.phi = [c](const ParaVector&) { return c; };
    const auto est = solve_dirichlet(domain, data_const, points, 1000, eps,
                                     substream_seed(spec.seed, 3), spec.threads);
    bool exact = true;
    for (std::size_t k = 0; k < est.size(); ++k)
      for (std::size_t cc = 0; cc < est[k].value.mean.size(); ++cc)
        if (est[k].value.mean[cc] != c[static_cast<BladeIndex>(cc)] ||
            est[k].value.stderr_[cc] != 0.0)
          exact = false;
    ck.record("constant-data-exact", exact);
  }

  // Doubling-by-two exactness: scaling the data by a power of two scales
  // every estimate bitwise (same seed, same walks).
  {
    BoundaryData data_2z1;
    data_2z1.phi = [&z1](const ParaVector& y) { return z1.eval(y) * 2.0; };
    const std::vector<ParaVector> one_pt{points[1]};
    const auto a = solve_dirichlet(domain, data_z1, one_pt, 20000, eps,
                                   substream_seed(spec.seed, 4), spec.threads);
    const auto b = solve_dirichlet(domain, data_2z1, one_pt, 20000, eps,
                                   substream_seed(spec.seed, 4), spec.threads);
    bool exact = true;
    for (std::size_t c = 0; c < a[0].value.mean.size(); ++c)
      if (b[0].value.mean[c] != 2.0 * a[0].value.mean[c]) exact = false;
    ck.record("estimator-linear-in-data-exact", exact);
  }

  // stderr ~ n_walks^{-1/2}: quadrupling the walks halves the stderr.
  {
    const std::vector<ParaVector> one_pt{points[1]};
    std::ostringstream csv;
    csv.precision(17);
    csv << "n_walks";
    for (int c = 0; c < (1 << n); ++c) csv << ",est_" << c;
    for (int c = 0; c < (1 << n); ++c) csv << ",stderr_" << c;
    csv << "\n";
    std::vector<double> ses;
    for (std::size_t nw : {n_walks / 16, n_walks / 4, n_walks}) {
      const auto est = solve_dirichlet(domain, data_z1, one_pt, nw, eps,
                                       substream_seed(spec.seed, 5), spec.threads)[0];
      csv << nw;
      for (double m : est.value.mean) csv << "," << m;
      for (double s : est.value.stderr_) csv << "," << s;
      csv << "\n";
      ses.push_back(est.value.stderr_[0]);  // scalar component carries phi's spread
    }
    const double r1 = ses[0] / ses[1], r2 = ses[1] / ses[2];
    ck.record("stderr-quarter-walks-halves",
              r1 >= 1.6 && r1 <= 2.4 && r2 >= 1.6 && r2 <= 2.4,
              {{"ratios", {r1, r2}}});
    ExperimentResult r = finish(spec, ck, std::move(body));
    r.csv = csv.str();
    r.csv_name = "dirichlet_convergence.csv";
    return r;
  }
}

// ---------- cone ----------

ExperimentResult exp_cone(const ExperimentSpec& spec) {
  validate_params(spec, {"alpha", "h", "n_walks", "dt", "dim"});
  const double alpha = p_dbl(spec, "alpha", M_PI / 2.0);
  const double h = p_dbl(spec, "h", 1.0);
  const std::size_t n_walks = p_sz(spec, "n_walks", 4000);
  const double dt = p_dbl(spec, "dt", 2e-5);
  const int dim = p_int(spec, "dim", 1);

  Checker ck;
  json body;
  body["alpha"] = alpha;
  body["h"] = h;

  std::vector<ProbEstimate> ps;
  json rows = json::array();
  for (int k = 1; k <= 3; ++k) {
    const ProbEstimate p = cone_hitting_probability(alpha, h, k, n_walks,
                                                    substream_seed(spec.seed, 600 + k), dim,
                                                    dt, spec.threads);
    ps.push_back(p);
    rows.push_back({{"k", k}, {"p", p.p}, {"stderr", p.stderr_}, {"n", p.n}});
  }
  body["estimates"] = rows;

  bool in_range = true;
  for (const auto& p : ps)
    if (p.p <= 0.0 || p.p >= 1.0) in_range = false;
  ck.record("probabilities-nondegenerate", in_range);

  bool sep_ok = true;
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const double sep = 3.0 * std::sqrt(ps[i].stderr_ * ps[i].stderr_ +
                                       ps[i + 1].stderr_ * ps[i + 1].stderr_);
    if (ps[i].p - ps[i + 1].p < sep) sep_ok = false;
  }
  ck.record("decreasing-in-k-3-sigma", sep_ok);

  return finish(spec, ck, std::move(body));
}

// ---------- liouville ----------

ExperimentResult exp_liouville(const ExperimentSpec& spec) {
  validate_params(spec, {"d", "n_walks", "dt"});
  const double d = p_dbl(spec, "d", 1.0);
  const std::size_t n_walks = p_sz(spec, "n_walks", 200000);
  const double dt = p_dbl(spec, "dt", 0.05);

  Checker ck;
  json body;
  body["d"] = d;

  const std::array<double, 3> t_grid{1.0, 4.0, 16.0};
  const auto est = liouville_survival(d, t_grid, n_walks, substream_seed(spec.seed, 700),
                                      dt, true, spec.threads);

  json rows = json::array();
  bool within = true;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double closed = 2.0 * norm_cdf(d / std::sqrt(t_grid[i])) - 1.0;
    if (std::abs(est[i].p - closed) > 3.0 * est[i].stderr_) within = false;
    rows.push_back({{"t", t_grid[i]}, {"p", est[i].p}, {"stderr", est[i].stderr_},
                    {"closed_form", closed}});
  }
  body["estimates"] = rows;
  ck.record("matches-reflection-closed-form", within);
  ck.record("strictly-decreasing-in-t", est[0].p > est[1].p && est[1].p > est[2].p);

  return finish(spec, ck, std::move(body));
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{
      "algebra-selftest", "monogenicity", "bm-diagnostics", "ito-residual",
      "ito-scaling",      "dirichlet",    "cone",           "liouville"};
  return kinds;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.kind == "algebra-selftest") return exp_algebra(spec);
  if (spec.kind == "monogenicity") return exp_monogenicity(spec);
  if (spec.kind == "bm-diagnostics") return exp_bm(spec);
  if (spec.kind == "ito-residual") return exp_ito_residual(spec);
  if (spec.kind == "ito-scaling") return exp_ito_scaling(spec);
  if (spec.kind == "dirichlet") return exp_dirichlet(spec);
  if (spec.kind == "cone") return exp_cone(spec);
  if (spec.kind == "liouville") return exp_liouville(spec);
  throw std::invalid_argument("unknown experiment kind: " + spec.kind);
}

std::vector<ExperimentSpec> reproduce_all_specs(std::uint64_t master_seed, int threads) {
  std::vector<ExperimentSpec> specs;
  const auto& kinds = experiment_kinds();
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    ExperimentSpec s;
    s.kind = kinds[i];
    s.seed = substream_seed(master_seed, i);
    s.threads = threads;
    specs.push_back(std::move(s));
  }
  return specs;
}

std::vector<std::string> validate_fixture_registry(std::uint64_t seed,
                                                   const std::string& corrupt) {
  std::vector<std::string> failures;
  for (const Fixture& fx : fixture_registry()) {
    const auto pts = random_points(fx.dim, 40, -2.0, 2.0, substream_seed(seed, 800 + fx.dim));
    const auto rep = monogenicity_check(fx.field, pts, 1e-3, 1e-5);
    const bool declared = fx.expect_monogenic != (fx.name == corrupt);
    if (rep.pass != declared)
      failures.push_back("fixture " + fx.name + ": declared " +
                         (declared ? "monogenic" : "non-monogenic") +
                         " but measured max residual " + std::to_string(rep.max_residual));
  }
  return failures;
}

}  // namespace cliffmc
