#include "mapperscope/mapper.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "mapperscope/error.h"
#include "union_find.h"

namespace mapperscope {

IntervalCover build_cover(std::span<const double> lens, int resolution,
                          double gain) {
  if (lens.empty()) throw Error(ErrorCode::kEmptyLens, "lens is empty");
  if (resolution < 1) {
    throw Error(ErrorCode::kInvalidArgument, "resolution must be >= 1");
  }
  if (!(gain > 0.0 && gain < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gain must lie in (0, 1)");
  }
  if (!std::all_of(lens.begin(), lens.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::kInvalidArgument, "lens has non-finite values");
  }
  const auto [min_it, max_it] = std::minmax_element(lens.begin(), lens.end());
  const double lo = *min_it;
  const double hi = *max_it;
  const double range = hi - lo;

  IntervalCover cover;
  if (range == 0.0 || resolution == 1) {
    cover.intervals.push_back({lo, hi});
    return cover;
  }
  const double length = range / (resolution - (resolution - 1) * gain);
  const double step = length - length * gain;
  cover.intervals.reserve(resolution);
  for (int i = 0; i < resolution; ++i) {
    const double start = lo + i * step;
    cover.intervals.push_back({start, start + length});
  }
  cover.intervals.back().end = hi;
  return cover;
}

std::vector<std::vector<std::size_t>> assign_bins(std::span<const double> lens,
                                                  const IntervalCover& cover) {
  std::vector<std::vector<std::size_t>> bins(cover.intervals.size());
  for (std::size_t j = 0; j < lens.size(); ++j) {
    const double v = lens[j];
    // Intervals are sorted by start, so the first candidate is found by
    // bisection on the ends and the scan stops once starts pass v.
    auto first = std::lower_bound(
        cover.intervals.begin(), cover.intervals.end(), v,
        [](const Interval& iv, double value) { return iv.end < value; });
    for (auto it = first; it != cover.intervals.end() && it->start <= v; ++it) {
      if (v <= it->end) {
        bins[static_cast<std::size_t>(it - cover.intervals.begin())].push_back(j);
      }
    }
  }
  return bins;
}

std::vector<std::vector<std::size_t>> cluster_bin(
    const Matrix& points, std::span<const std::size_t> rows, double delta) {
  std::vector<std::vector<std::size_t>> clusters;
  const std::size_t m = rows.size();
  if (m == 0) return clusters;
  const std::size_t k = points.cols();

  // Contiguous copy of the bin, in ascending original-index order.
  std::vector<std::size_t> order(rows.begin(), rows.end());
  std::sort(order.begin(), order.end());
  std::vector<double> local(m * k);
  for (std::size_t i = 0; i < m; ++i) {
    auto src = points.row(order[i]);
    std::copy(src.begin(), src.end(), local.begin() + i * k);
  }

  // Early-exit bound on the squared distance; the exact decision is made on
  // sqrt(sum) <= delta so it matches the plain Euclidean definition.
  const double bound = delta * delta * (1.0 + 1e-12) + 1e-300;
  auto within = [&](std::size_t a, std::size_t b) {
    const double* pa = local.data() + a * k;
    const double* pb = local.data() + b * k;
    double sum = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double diff = pa[c] - pb[c];
      sum += diff * diff;
      if (sum > bound) return false;
    }
    return std::sqrt(sum) <= delta;
  };

  // Breadth-first growth of each cluster over the shrinking unvisited pool.
  std::vector<std::size_t> unvisited(m);
  std::iota(unvisited.rbegin(), unvisited.rend(), std::size_t{0});
  std::vector<std::size_t> frontier;
  while (!unvisited.empty()) {
    std::vector<std::size_t> members;
    frontier.assign(1, unvisited.back());
    unvisited.pop_back();
    while (!frontier.empty()) {
      const std::size_t p = frontier.back();
      frontier.pop_back();
      members.push_back(order[p]);
      for (std::size_t i = 0; i < unvisited.size();) {
        if (within(p, unvisited[i])) {
          frontier.push_back(unvisited[i]);
          unvisited[i] = unvisited.back();
          unvisited.pop_back();
        } else {
          ++i;
        }
      }
    }
    std::sort(members.begin(), members.end());
    clusters.push_back(std::move(members));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

std::vector<MapperEdge> nerve_edges(std::span<const MapperNode> nodes,
                                    std::size_t observation_count) {
  std::vector<std::vector<std::size_t>> containing(observation_count);
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    for (std::size_t obs : nodes[v].members) containing[obs].push_back(v);
  }
  std::unordered_map<std::uint64_t, std::size_t> shared;
  for (const auto& list : containing) {
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        const auto lo = std::min(list[a], list[b]);
        const auto hi = std::max(list[a], list[b]);
        ++shared[(static_cast<std::uint64_t>(lo) << 32) | hi];
      }
    }
  }
  std::vector<MapperEdge> edges;
  edges.reserve(shared.size());
  for (const auto& [key, count] : shared) {
    edges.push_back({static_cast<std::size_t>(key >> 32),
                     static_cast<std::size_t>(key & 0xffffffffULL), count});
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  return edges;
}

double mean_lens(std::span<const double> lens,
                 std::span<const std::size_t> members) {
  if (members.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t m : members) sum += lens[m];
  return sum / static_cast<double>(members.size());
}

MapperGraph build_mapper(const Matrix& points, std::span<const double> lens,
                         const CoverParams& params, std::string method_name) {
  if (lens.empty()) throw Error(ErrorCode::kEmptyLens, "lens is empty");
  if (points.rows() != lens.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "attribution rows (" + std::to_string(points.rows()) +
                    ") differ from lens length (" + std::to_string(lens.size()) +
                    ")");
  }
  check_cover_params(params);

  const IntervalCover cover = build_cover(lens, params.resolution, params.gain);
  const auto bins = assign_bins(lens, cover);

  MapperGraph graph;
  graph.params = params;
  graph.method_name = std::move(method_name);
  for (std::size_t b = 0; b < bins.size(); ++b) {
    for (auto& members : cluster_bin(points, bins[b], params.delta)) {
      MapperNode node;
      node.id = graph.nodes.size();
      node.interval_index = static_cast<int>(b);
      node.lens_value = mean_lens(lens, members);
      node.members = std::move(members);
      graph.nodes.push_back(std::move(node));
    }
  }
  graph.edges = nerve_edges(graph.nodes, lens.size());
  return graph;
}

MapperGraph build_mapper(const AttributionSet& attributions,
                         std::span<const double> lens,
                         const CoverParams& params) {
  return build_mapper(attributions.attributions, lens, params,
                      attributions.method_name);
}

std::size_t connected_components(const MapperGraph& graph) {
  internal::UnionFind uf(graph.nodes.size());
  for (const auto& e : graph.edges) uf.unite(e.source, e.target);
  return uf.set_count();
}

std::size_t cycle_rank(const MapperGraph& graph) {
  return graph.edges.size() + connected_components(graph) - graph.nodes.size();
}

}  // namespace mapperscope
