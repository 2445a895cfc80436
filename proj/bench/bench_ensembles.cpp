// Serial reference vs OpenMP ensembles.

#include <benchmark/benchmark.h>

#include "jsqd/ensemble.hpp"
#include "jsqd/path.hpp"

using namespace jsqd;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_CtmcEnsemble(benchmark::State& state) {
  const SystemParams p{1000, 10, 0.95};
  const CtmcSimulator sim(p);
  const Occupancy init = InitSpec::parse("mu").resolve(p);
  const auto grid = uniform_grid(2.0, 0.01);
  CtmcOptions opts;
  for (auto _ : state) {
    auto runs = ctmc_ensemble(sim, init, grid, 7, 32, opts, mode(state));
    benchmark::DoNotOptimize(runs.data());
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_SdeEnsemble(benchmark::State& state) {
  LimitSystemSpec spec;
  spec.regime = RegimeKind::Critical;
  spec.r = 4;
  spec.c = 1.0;
  spec.alpha = 0.5;
  spec.z = {0.0, 0.0, 0.0, 0.0};
  SdeOptions opts;
  opts.t_end = 2.0;
  opts.dt = 1e-3;
  const std::vector<double> times{0.5, 1.0, 2.0};
  for (auto _ : state) {
    auto s = sde_ensemble(spec, opts, 7, 256, times, mode(state));
    benchmark::DoNotOptimize(s.values.data());
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_BetaGrid(benchmark::State& state) {
  const SystemParams p{100000, 300, 0.99};
  std::vector<double> xs(1 << 16);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i) / static_cast<double>(xs.size() - 1);
  for (auto _ : state) {
    auto out = beta_grid(p, xs, mode(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_CtmcEnsemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SdeEnsemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BetaGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
