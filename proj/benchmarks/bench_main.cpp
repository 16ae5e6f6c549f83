#include <benchmark/benchmark.h>

#include "vpt/oracle.hpp"
#include "vpt/series.hpp"
#include "vpt/variational.hpp"
#include "vpt/wick.hpp"

namespace {

void BM_WickReduce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vpt::wick::wick_reduce({{1, n}, {2, n}}));
}
BENCHMARK(BM_WickReduce)->Arg(2)->Arg(4)->Arg(6);

void BM_PsiSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(vpt::series::psi_pert_series());
}
BENCHMARK(BM_PsiSeries)->Unit(benchmark::kMillisecond);

void BM_GroundState(benchmark::State& state) {
  vpt::OscillatorParams p;
  p.g = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(vpt::oracle::ground_state(p, 8.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GroundState)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);

void BM_OmegaProfile(benchmark::State& state) {
  const auto grid = vpt::uniform_grid(0.0, 8.0, static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(vpt::variational::solve_omega_profile(static_cast<int>(state.range(0)), 0.5, grid));
}
BENCHMARK(BM_OmegaProfile)->Args({1, 401})->Args({2, 401})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
