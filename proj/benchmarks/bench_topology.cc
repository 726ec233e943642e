#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "mapperscope/random.h"
#include "mapperscope/topology.h"

namespace mapperscope::bench {
namespace {

// Random connected graph: a spanning path plus extra chords.
FilteredGraph random_graph(std::size_t n, std::size_t extra, std::uint64_t seed) {
  Rng rng(seed);
  FilteredGraph g;
  g.heights.resize(n);
  for (auto& h : g.heights) h = rng.uniform();
  for (std::size_t i = 1; i < n; ++i) g.edges.emplace_back(i - 1, i);
  for (std::size_t k = 0; k < extra; ++k) {
    const auto a = rng.below(n), b = rng.below(n);
    if (a != b) g.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return g;
}

void BM_ExtendedPersistence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, n / 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(extended_persistence(g));
}
BENCHMARK(BM_ExtendedPersistence)->Arg(100)->Arg(400)->Arg(1600)
    ->Unit(benchmark::kMicrosecond);

std::vector<std::pair<double, double>> random_points(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<double, double>> out(n);
  for (auto& [lo, hi] : out) {
    lo = rng.uniform();
    hi = lo + rng.uniform() * 0.5;
  }
  return out;
}

void BM_Bottleneck(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_points(n, 3), b = random_points(n + n / 5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_points(a, b));
}
BENCHMARK(BM_Bottleneck)->Arg(10)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace mapperscope::bench
