#include <benchmark/benchmark.h>

#include <string>

#include "mapperscope/query.h"
#include "mapperscope/random.h"

namespace mapperscope::bench {
namespace {

constexpr const char* kQuery =
    "(f0 > 0.25 AND f1 <= 0.8) OR NOT (pred < 0.5 AND label == 1) OR f2 != 0.5";

void BM_ParseFilter(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_filter(kQuery));
}
BENCHMARK(BM_ParseFilter);

void BM_EvalFilter(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(9);
  FeatureTable table{{"f0", "f1", "f2"}, Matrix(n, 3)};
  PredictionVector preds;
  LabelVector labels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < 3; ++j) table.values(i, j) = rng.uniform();
    preds.probs.push_back(rng.uniform());
    labels.labels.push_back(static_cast<int>(rng.below(2)));
  }
  const auto expr = parse_filter(kQuery);
  for (auto _ : state) benchmark::DoNotOptimize(eval_filter(expr, table, preds, labels));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvalFilter)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace mapperscope::bench
