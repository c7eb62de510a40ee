#include <benchmark/benchmark.h>

#include "kgraph/classify.hpp"
#include "kgraph/families.hpp"
#include "kgraph/lattice.hpp"

using namespace kg;

namespace {

void BM_Report(benchmark::State& state, KGraph g) {
  for (auto _ : state) benchmark::DoNotOptimize(kp_report(g));
}
BENCHMARK_CAPTURE(BM_Report, loops_with_tail, ex62());
BENCHMARK_CAPTURE(BM_Report, three_and_two_loops, ex64());
BENCHMARK_CAPTURE(BM_Report, four_cycle, ex311());
BENCHMARK_CAPTURE(BM_Report, union, disjoint_union(ex62(), ex64()));

void BM_Lattice(benchmark::State& state) {
  auto g = disjoint_union(disjoint_union(ex62(), ex64()), looptail(), "A.", "B.");
  for (auto _ : state) benchmark::DoNotOptimize(all_hs_subsets(g));
}
BENCHMARK(BM_Lattice);

void BM_Closure(benchmark::State& state) {
  auto g = pullback_2graph(cycle_graph(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(saturated_hereditary_closure(g, {0}));
}
BENCHMARK(BM_Closure)->Arg(8)->Arg(32)->Arg(128);

void BM_LazyGridReport(benchmark::State& state) {
  auto g = grid(2);
  auto sample = grid_box(2, state.range(0));
  Bounds b;
  b.depth = 20;
  for (auto _ : state) benchmark::DoNotOptimize(lazy_report(g, sample, b));
}
BENCHMARK(BM_LazyGridReport)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_LazyBratteliReport(benchmark::State& state) {
  auto g = rank2_bratteli();
  auto sample = bratteli_vertices(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lazy_report(g, sample));
}
BENCHMARK(BM_LazyBratteliReport)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
