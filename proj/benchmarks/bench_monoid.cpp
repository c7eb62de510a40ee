#include <benchmark/benchmark.h>

#include "kgraph/families.hpp"
#include "kgraph/monoid.hpp"
#include "kgraph/path.hpp"

using namespace kg;

namespace {

void BM_EqualExact(benchmark::State& state) {
  auto g = ex64();
  auto a = gen(0, {0, 0});
  auto b = gen(0, {state.range(0), 0}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(t_equal(g, a, b, EqMode::exact()));
}
BENCHMARK(BM_EqualExact)->Arg(1)->Arg(4)->Arg(8);

void BM_EqualPullbackCycle(benchmark::State& state) {
  auto g = pullback_2graph(cycle_graph(static_cast<int>(state.range(0))));
  auto a = gen(0, {0, 0});
  auto b = gen(0, {state.range(0), 0});
  for (auto _ : state) benchmark::DoNotOptimize(t_equal(g, a, b));
}
BENCHMARK(BM_EqualPullbackCycle)->Arg(4)->Arg(8)->Arg(16);

void BM_EqualRewrite(benchmark::State& state) {
  auto g = ex53();
  auto v = g.vertex("v");
  auto a = gen(v, {1, -1}), b = gen(v, {0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(t_equal(g, a, b, EqMode::rewrite()));
}
BENCHMARK(BM_EqualRewrite);

void BM_KernelStabilization(benchmark::State& state) {
  auto g = ex62();
  for (auto _ : state) benchmark::DoNotOptimize(kernel_stabilization(g));
}
BENCHMARK(BM_KernelStabilization);

void BM_CoordMatrix(benchmark::State& state) {
  auto g = ex64();
  Degree n{state.range(0), state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(coord_matrix(g, n));
}
BENCHMARK(BM_CoordMatrix)->Arg(4)->Arg(16)->Arg(64);

void BM_EnumeratePaths(benchmark::State& state) {
  auto g = ex64();
  Degree n{state.range(0), state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_paths(g, 0, n).size());
}
BENCHMARK(BM_EnumeratePaths)->Arg(1)->Arg(2)->Arg(3);

void BM_LazyGridEquality(benchmark::State& state) {
  auto g = grid(2);
  LazyTElement a(LazyTGen{{0, 0}, {0, 0}});
  LazyTElement b(LazyTGen{{1, 1}, {1, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(t_equal(g, a, b, state.range(0)));
}
BENCHMARK(BM_LazyGridEquality)->Arg(4)->Arg(16)->Arg(64);

}  // namespace
