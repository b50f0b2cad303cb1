// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "quadric/suites.hpp"
#include "quadric/theorem_engine.hpp"

using namespace quadric;

namespace {

Operator random_symmetric(int n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss;
  Operator a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  return 0.5 * (a + a.transpose());
}

Execution mode(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_JacobiCyclic(benchmark::State& state) {
  const Operator a = random_symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_cyclic(a, 1e-12, 100));
}

void BM_JacobiRoundRobin(benchmark::State& state) {
  const Operator a = random_symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_round_robin(a, 1e-12, 100, mode(state)));
}

void BM_TubeScan(benchmark::State& state) {
  const RadiusGrid grid = radius_grid(0.05, 1.52, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(scan_tube(3, grid, 1e-10, {}, mode(state)));
}

void BM_Certificate(benchmark::State& state) {
  const auto alphas = sample_alphas(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(principal_nonexistence_certificate(5, alphas, 7, mode(state)));
}

void BM_AmbientSuite(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(ambient_suite(static_cast<int>(state.range(0)), 1e-10, 7, 100,
                                           mode(state)));
}

}  // namespace

BENCHMARK(BM_JacobiCyclic)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_JacobiRoundRobin)
    ->ArgsProduct({{16, 64, 128}, {0, 1}})
    ->ArgNames({"n", "parallel"})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TubeScan)->ArgsProduct({{20, 60}, {0, 1}})->ArgNames({"points", "parallel"})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Certificate)->ArgsProduct({{25}, {0, 1}})->ArgNames({"alphas", "parallel"})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AmbientSuite)->ArgsProduct({{4, 8}, {0, 1}})->ArgNames({"m", "parallel"})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
