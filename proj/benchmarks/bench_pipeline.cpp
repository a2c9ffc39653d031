#include <benchmark/benchmark.h>

#include "quarkflow/pipeline.hpp"

using namespace quarkflow;

namespace {

void BM_Heat1dPipeline(benchmark::State& state) {
  ComputationalGraph g = gen_heat1d_midpoint().graph;
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose_graph(g, 1).objective);
}
BENCHMARK(BM_Heat1dPipeline);

void BM_Heat3dPipeline(benchmark::State& state) {
  ComputationalGraph g = gen_heat3d_midpoint().graph;
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose_graph(g, 1).objective);
}
BENCHMARK(BM_Heat3dPipeline);

void BM_Euler3dTrace(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(gen_euler3d_rk4().graph.vertex_count());
}
BENCHMARK(BM_Euler3dTrace);

void BM_Euler3dPipeline(benchmark::State& state) {
  ComputationalGraph g = gen_euler3d_rk4().graph;
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose_graph(g, 1).objective);
}
BENCHMARK(BM_Euler3dPipeline)->Unit(benchmark::kMillisecond);

void BM_SolveRandom(benchmark::State& state) {
  ComputationalGraph g = random_graph(17, static_cast<int>(state.range(0)),
                                      0.25, 0.35);
  DecompositionModel model = build_model(g, 1);
  FlowNetwork net = build_network(model);
  for (auto _ : state) benchmark::DoNotOptimize(solve_mcnf(net).objective);
}
BENCHMARK(BM_SolveRandom)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
