#include <benchmark/benchmark.h>

#include "bench_data.h"
#include "mapperscope/mapper.h"
#include "mapperscope/param_select.h"
#include "mapperscope/summarize.h"

namespace mapperscope::bench {
namespace {

void BM_BuildMapper(benchmark::State& state) {
  const auto cloud = make_cloud(static_cast<std::size_t>(state.range(0)), 16);
  const CoverParams params{static_cast<int>(state.range(1)), 0.4, 0.8, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_mapper(cloud.points, cloud.lens, params));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildMapper)->Args({1000, 10})->Args({5000, 10})->Args({5000, 30})
    ->Unit(benchmark::kMillisecond);

void BM_EstimateDelta(benchmark::State& state) {
  const auto cloud = make_cloud(static_cast<std::size_t>(state.range(0)), 24);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_delta(cloud.points, 10, 3));
  }
}
BENCHMARK(BM_EstimateDelta)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_StabilityScore(benchmark::State& state) {
  const auto cloud = make_cloud(2000, 16);
  const CoverParams params{static_cast<int>(state.range(0)), 0.4, 0.8, 5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(stability_score(cloud.points, cloud.lens, params, 5));
  }
}
BENCHMARK(BM_StabilityScore)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_Summarize(benchmark::State& state) {
  const auto cloud = make_cloud(3000, 8);
  const auto graph = build_mapper(cloud.points, cloud.lens, {20, 0.6, 0.9, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(summarize_graph(graph, cloud.lens, 0.5, true));
  }
}
BENCHMARK(BM_Summarize)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mapperscope::bench
