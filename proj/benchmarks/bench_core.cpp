#include <benchmark/benchmark.h>

#include <random>

#include "cliffmc/algebra.hpp"
#include "cliffmc/fixtures.hpp"
#include "cliffmc/ito.hpp"
#include "cliffmc/process.hpp"
#include "cliffmc/rng.hpp"

using namespace cliffmc;

namespace {

Multivector random_mv(int n, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector m(n);
  for (std::size_t i = 0; i < m.size(); ++i) m[static_cast<BladeIndex>(i)] = u(eng);
  return m;
}

void BM_BladeProduct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BladeIndex count = BladeIndex{1} << n;
  BladeIndex a = 0;
  for (auto _ : state) {
    const BladeProduct p = blade_product(a & (count - 1), (a >> 3) & (count - 1), n);
    benchmark::DoNotOptimize(p);
    ++a;
  }
}
BENCHMARK(BM_BladeProduct)->Arg(3)->Arg(6)->Arg(8);

void BM_MultivectorMultiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto eng = make_engine(1);
  const Multivector a = random_mv(n, eng), b = random_mv(n, eng);
  for (auto _ : state) {
    const Multivector c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_MultivectorMultiply)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

void BM_SampleBmPath(benchmark::State& state) {
  const std::size_t n_steps = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const ProcessPath p = sample_bm(PathConfig(2, ParaVector(2), 1.0, n_steps, seed++));
    benchmark::DoNotOptimize(p.states.back());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n_steps));
}
BENCHMARK(BM_SampleBmPath)->Arg(1000)->Arg(10000);

void BM_CliffordItoResidual(benchmark::State& state) {
  const Fixture& fx = find_fixture("z1z1z2");
  const ProcessPath p =
      sample_bm(PathConfig(fx.dim, ParaVector(fx.dim), 1.0,
                           static_cast<std::size_t>(state.range(0)), 7));
  for (auto _ : state) {
    const auto rep = clifford_ito_residual(fx.field, p, CovariationMode::kBrownianDelta);
    benchmark::DoNotOptimize(rep.report.residual_norm);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_CliffordItoResidual)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
