#include <benchmark/benchmark.h>

#include "gibbsmimo/detectors.hpp"
#include "gibbsmimo/temperature.hpp"

namespace {

using namespace gibbsmimo;

void BM_GibbsSweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = generate_instance(n, 10.0, SymbolPolicy::uniform_random, RngSeed{1, n});
  GibbsChain chain(inst, 2.5, ScanOrder::random_permutation, SymbolVector(n), RngSeed{2, n});
  for (auto _ : state) {
    chain.sweep();
    benchmark::DoNotOptimize(chain.current_cost());
  }
  state.counters["MAC/sweep"] = static_cast<double>(2 * n * n);
  state.counters["MAC/s"] = benchmark::Counter(static_cast<double>(2 * n * n), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_GibbsSweep)->Arg(10)->Arg(50)->Arg(100)->Arg(400);

void BM_GibbsDetect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double snr = snr_db_to_linear(12.0);
  const auto inst = generate_instance(n, snr, SymbolPolicy::uniform_random, RngSeed{3, n});
  GibbsConfig cfg;
  cfg.alpha = *alpha_bounds(snr, n).alpha_plus;
  cfg.iterations = 100;
  for (auto _ : state) benchmark::DoNotOptimize(gibbs_detect(inst, cfg).best_cost);
}
BENCHMARK(BM_GibbsDetect)->Arg(10)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_SphereDecoder(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double snr = snr_db_to_linear(static_cast<double>(state.range(1)));
  std::uint64_t trial = 0;
  std::uint64_t visits = 0;
  for (auto _ : state) {
    const auto inst = generate_instance(n, snr, SymbolPolicy::uniform_random, RngSeed{4, trial++ % 64});
    const auto res = sphere_detect(inst, RadiusTransmittedResidual{});
    visits += res.node_visits;
    benchmark::DoNotOptimize(res.best_cost);
  }
  state.counters["nodes"] = benchmark::Counter(static_cast<double>(visits), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_SphereDecoder)->Args({10, 6})->Args({10, 14})->Args({20, 10})->Args({20, 16})
    ->Unit(benchmark::kMicrosecond);

void BM_MlExhaustive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = generate_instance(n, 10.0, SymbolPolicy::uniform_random, RngSeed{5, n});
  for (auto _ : state) benchmark::DoNotOptimize(ml_exhaustive(inst));
}
BENCHMARK(BM_MlExhaustive)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
