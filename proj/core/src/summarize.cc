#include "mapperscope/summarize.h"

#include <algorithm>
#include <iterator>
#include <tuple>

#include "mapperscope/error.h"
#include "mapperscope/mapper.h"
#include "union_find.h"

namespace mapperscope {
namespace {

std::size_t intersection_size(std::span<const std::size_t> a,
                              std::span<const std::size_t> b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

std::size_t observation_bound(const MapperGraph& graph) {
  std::size_t bound = 0;
  for (const auto& node : graph.nodes) {
    if (!node.members.empty()) bound = std::max(bound, node.members.back() + 1);
  }
  return bound;
}

// One single-linkage cut. Returns true when at least one merge happened.
bool merge_once(const MapperGraph& in, std::span<const double> lens,
                double threshold, MapperGraph& out) {
  internal::UnionFind uf(in.nodes.size());
  bool merged = false;
  // Pairs with similarity > 0 share a member and are therefore edges.
  for (const auto& e : in.edges) {
    const auto& a = in.nodes[e.source].members;
    const auto& b = in.nodes[e.target].members;
    const std::size_t inter = intersection_size(a, b);
    const std::size_t uni = a.size() + b.size() - inter;
    const double sim = static_cast<double>(inter) / static_cast<double>(uni);
    if (sim >= threshold) merged |= uf.unite(e.source, e.target);
  }
  if (!merged) {
    out = in;
    return false;
  }

  std::vector<std::vector<std::size_t>> groups(in.nodes.size());
  for (std::size_t v = 0; v < in.nodes.size(); ++v) groups[uf.find(v)].push_back(v);

  std::vector<MapperNode> nodes;
  for (const auto& group : groups) {
    if (group.empty()) continue;
    MapperNode node;
    node.interval_index = in.nodes[group.front()].interval_index;
    for (std::size_t v : group) {
      const auto& m = in.nodes[v].members;
      std::vector<std::size_t> joined;
      joined.reserve(node.members.size() + m.size());
      std::set_union(node.members.begin(), node.members.end(), m.begin(),
                     m.end(), std::back_inserter(joined));
      node.members.swap(joined);
      node.interval_index = std::min(node.interval_index, in.nodes[v].interval_index);
    }
    node.lens_value = mean_lens(lens, node.members);
    nodes.push_back(std::move(node));
  }
  std::sort(nodes.begin(), nodes.end(), [](const MapperNode& a, const MapperNode& b) {
    return std::tie(a.interval_index, a.members) < std::tie(b.interval_index, b.members);
  });
  for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].id = i;

  out.params = in.params;
  out.method_name = in.method_name;
  out.nodes = std::move(nodes);
  out.edges = nerve_edges(out.nodes, observation_bound(out));
  return true;
}

}  // namespace

double jaccard_similarity(std::span<const std::size_t> a,
                          std::span<const std::size_t> b) {
  if (a.empty() && b.empty()) return 1.0;
  const std::size_t inter = intersection_size(a, b);
  return static_cast<double>(inter) /
         static_cast<double>(a.size() + b.size() - inter);
}

MapperGraph summarize_graph(const MapperGraph& graph,
                            std::span<const double> lens,
                            double similarity_threshold, bool fixpoint) {
  if (!(similarity_threshold > 0.0 && similarity_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "similarity threshold must lie in (0, 1]");
  }
  MapperGraph current;
  bool merged = merge_once(graph, lens, similarity_threshold, current);
  while (fixpoint && merged) {
    MapperGraph next;
    merged = merge_once(current, lens, similarity_threshold, next);
    current = std::move(next);
  }
  return current;
}

}  // namespace mapperscope
