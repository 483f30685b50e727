#include <benchmark/benchmark.h>

#include <random>

#include "degenum/exact_count.hpp"
#include "degenum/mw_integral.hpp"
#include "degenum/saddle.hpp"
#include "degenum/sampler.hpp"

using namespace degenum;

static void BM_ExactCountRegular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DegreeSequence d = DegreeSequence::regular(n, n / 2 - (n / 2) % 2);
  for (auto _ : state) benchmark::DoNotOptimize(exact_count(d, ForbiddenGraph(n)).value);
}
BENCHMARK(BM_ExactCountRegular)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_ExactCountForbiddenEdge(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DegreeSequence d = DegreeSequence::regular(n, 4);
  const ForbiddenGraph x(n, {{0, 1}, {1, 2}});
  for (auto _ : state) benchmark::DoNotOptimize(exact_count(d, x).value);
}
BENCHMARK(BM_ExactCountForbiddenEdge)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_SaddleSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) deg[static_cast<std::size_t>(j)] = n / 2 + (j % 2 == 0 ? 2 : -2);
  const DegreeSequence d(deg);
  const ForbiddenGraph x(n, {{0, 1}, {2, 3}, {4, 5}});
  for (auto _ : state) benchmark::DoNotOptimize(solve_saddle(d, x).radii);
}
BENCHMARK(BM_SaddleSolve)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMicrosecond);

static void BM_SwitchStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  LabeledGraph g = realize(DegreeSequence::regular(n, n / 2 - (n / 2) % 2));
  std::mt19937_64 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(switch_step(g, rng));
}
BENCHMARK(BM_SwitchStep)->Arg(60)->Arg(400);

static void BM_BoxIntegral(benchmark::State& state) {
  auto c = CoefficientSet::zeros(static_cast<int>(state.range(0)), 1.0, 0.5);
  c.J.assign(static_cast<std::size_t>(c.N), 0.5);
  c.C.assign(static_cast<std::size_t>(c.N) * static_cast<std::size_t>(c.N), 0.1);
  BoxIntegralConfig cfg;
  cfg.samples = 10000;
  for (auto _ : state) benchmark::DoNotOptimize(mc_box_integral(c, cfg).mean);
  state.SetItemsProcessed(state.iterations() * cfg.samples);
}
BENCHMARK(BM_BoxIntegral)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
