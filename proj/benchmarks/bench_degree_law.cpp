#include <benchmark/benchmark.h>

#include "prefatt/closed_form.hpp"
#include "prefatt/combinatorics.hpp"
#include "prefatt/recurrence.hpp"
#include "prefatt/rng.hpp"
#include "prefatt/simulator.hpp"

using namespace prefatt;

static void BM_FirstNodeTable(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(first_node_table(n));
}
BENCHMARK(BM_FirstNodeTable)->Arg(50)->Arg(100)->Arg(200);

static void BM_ScaledTable(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scaled_table(n));
}
BENCHMARK(BM_ScaledTable)->Arg(50)->Arg(100)->Arg(200);

static void BM_PClosedRow(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  warm_factorials(2 * n);
  for (auto _ : state) {
    for (unsigned k = 1; k <= n; ++k)
      benchmark::DoNotOptimize(p_closed(n, k));
  }
}
BENCHMARK(BM_PClosedRow)->Arg(50)->Arg(100)->Arg(200);

static void BM_PClosedFloat(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(p_closed_float(n, 5));
}
BENCHMARK(BM_PClosedFloat)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_MarginalTrial(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  RngStream stream(42);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_marginal(1, n, stream));
}
BENCHMARK(BM_MarginalTrial)->Arg(10)->Arg(100)->Arg(1000);

static void BM_GraphTrial(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  RngStream stream(42);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_graph(n, stream));
}
BENCHMARK(BM_GraphTrial)->Arg(10)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
