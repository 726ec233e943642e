#include "mapperscope/topology.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "mapperscope/error.h"
#include "mapperscope/mapper.h"

namespace mapperscope {

FilteredGraph node_filtration(const MapperGraph& graph,
                              std::span<const double> lens) {
  FilteredGraph fg;
  fg.heights.reserve(graph.nodes.size());
  for (const auto& node : graph.nodes) {
    fg.heights.push_back(mean_lens(lens, node.members));
  }
  fg.edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) fg.edges.emplace_back(e.source, e.target);
  return fg;
}

// ---------------------------------------------------------------------------
// Extended persistence

namespace {

enum class Pass { kCone, kAscending, kDescending };

struct Cell {
  Pass pass;
  int base_dim;  // dimension of the underlying simplex of the graph
  double height;
  std::size_t id;  // vertex or edge index in the graph
};

using Column = std::vector<std::size_t>;  // sorted ascending; low = back()

void add_columns(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(),
                                source.end(), std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

PersistenceDiagram extended_persistence(const FilteredGraph& graph) {
  const std::size_t nv = graph.heights.size();
  const std::size_t ne = graph.edges.size();
  for (const auto& [u, v] : graph.edges) {
    if (u >= nv || v >= nv || u == v) {
      throw Error(ErrorCode::kInvalidArgument, "filtered graph has a bad edge");
    }
  }
  auto edge_max = [&](std::size_t e) {
    const auto [u, v] = graph.edges[e];
    return std::max(graph.heights[u], graph.heights[v]);
  };
  auto edge_min = [&](std::size_t e) {
    const auto [u, v] = graph.edges[e];
    return std::min(graph.heights[u], graph.heights[v]);
  };

  // Filtration order: cone apex first, then the ascending pass over the graph
  // keyed by (height, dim, id), then the cones over the graph keyed by
  // (-height, dim, id) where height is the lowest point of the base simplex.
  std::vector<Cell> ascending;
  std::vector<Cell> descending;
  ascending.reserve(nv + ne);
  descending.reserve(nv + ne);
  for (std::size_t v = 0; v < nv; ++v) {
    ascending.push_back({Pass::kAscending, 0, graph.heights[v], v});
    descending.push_back({Pass::kDescending, 0, graph.heights[v], v});
  }
  for (std::size_t e = 0; e < ne; ++e) {
    ascending.push_back({Pass::kAscending, 1, edge_max(e), e});
    descending.push_back({Pass::kDescending, 1, edge_min(e), e});
  }
  std::sort(ascending.begin(), ascending.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.height, a.base_dim, a.id) < std::tie(b.height, b.base_dim, b.id);
  });
  std::sort(descending.begin(), descending.end(), [](const Cell& a, const Cell& b) {
    return std::make_tuple(-a.height, a.base_dim, a.id) <
           std::make_tuple(-b.height, b.base_dim, b.id);
  });

  std::vector<Cell> cells;
  cells.reserve(1 + 2 * (nv + ne));
  cells.push_back({Pass::kCone, -1, 0.0, 0});
  cells.insert(cells.end(), ascending.begin(), ascending.end());
  cells.insert(cells.end(), descending.begin(), descending.end());

  std::vector<std::size_t> vertex_pos(nv), edge_pos(ne), cone_vertex_pos(nv),
      cone_edge_pos(ne);
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    const bool asc = c.pass == Pass::kAscending;
    if (c.base_dim == 0) {
      (asc ? vertex_pos : cone_vertex_pos)[c.id] = i;
    } else {
      (asc ? edge_pos : cone_edge_pos)[c.id] = i;
    }
  }

  // Boundary columns. Cone dimension = base_dim + 1 for descending cells.
  std::vector<Column> columns(cells.size());
  std::vector<int> cone_dim(cells.size(), 0);
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    Column& col = columns[i];
    if (c.pass == Pass::kAscending) {
      cone_dim[i] = c.base_dim;
      if (c.base_dim == 1) {
        const auto [u, v] = graph.edges[c.id];
        col = {vertex_pos[u], vertex_pos[v]};
      }
    } else {
      cone_dim[i] = c.base_dim + 1;
      if (c.base_dim == 0) {
        col = {0, vertex_pos[c.id]};
      } else {
        const auto [u, v] = graph.edges[c.id];
        col = {edge_pos[c.id], cone_vertex_pos[u], cone_vertex_pos[v]};
      }
    }
    std::sort(col.begin(), col.end());
  }

  // Standard reduction with clearing, highest dimension first.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pivot_owner(cells.size(), kNone);
  std::vector<bool> cleared(cells.size(), false);
  Column scratch;
  for (int dim = 2; dim >= 1; --dim) {
    for (std::size_t j = 1; j < cells.size(); ++j) {
      if (cone_dim[j] != dim || cleared[j]) continue;
      Column& col = columns[j];
      while (!col.empty() && pivot_owner[col.back()] != kNone) {
        add_columns(col, columns[pivot_owner[col.back()]], scratch);
      }
      if (!col.empty()) {
        pivot_owner[col.back()] = j;
        cleared[col.back()] = true;
      }
    }
  }

  auto height_of = [&](std::size_t pos) { return cells[pos].height; };

  PersistenceDiagram diagram;
  for (std::size_t j = 1; j < cells.size(); ++j) {
    if (columns[j].empty() || cleared[j] || cone_dim[j] == 0) continue;
    const std::size_t birth = columns[j].back();
    const Cell& bc = cells[birth];
    const Cell& dc = cells[j];
    if (bc.pass == Pass::kCone) continue;
    PersistencePoint p;
    p.birth = height_of(birth);
    p.death = height_of(j);
    if (bc.pass == Pass::kAscending && dc.pass == Pass::kAscending) {
      p.kind = PairKind::kOrdinary;
      p.dim = bc.base_dim;
    } else if (bc.pass == Pass::kAscending) {
      p.kind = PairKind::kExtended;
      p.dim = bc.base_dim;
    } else {
      p.kind = PairKind::kRelative;
      p.dim = cone_dim[birth];
    }
    if (p.birth == p.death) continue;
    diagram.points.push_back(p);
  }
  return diagram;
}

PersistenceDiagram mapper_diagram(const MapperGraph& graph,
                                  std::span<const double> lens) {
  return extended_persistence(node_filtration(graph, lens));
}

// ---------------------------------------------------------------------------
// Bottleneck distance

namespace {

using Point = std::pair<double, double>;

double linf(const Point& a, const Point& b) {
  return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

double diagonal_cost(const Point& p) { return (p.second - p.first) / 2.0; }

// Hopcroft-Karp on an explicit bipartite graph with equal side sizes.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(std::vector<std::vector<std::size_t>> adjacency)
      : adj_(std::move(adjacency)),
        size_(adj_.size()),
        match_left_(size_, kFree),
        match_right_(size_, kFree),
        dist_(size_) {}

  std::size_t maximum_matching() {
    std::size_t matched = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < size_; ++u) {
        if (match_left_[u] == kFree && dfs(u)) ++matched;
      }
    }
    return matched;
  }

 private:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> queue;
    bool found = false;
    for (std::size_t u = 0; u < size_; ++u) {
      if (match_left_[u] == kFree) {
        dist_[u] = 0;
        queue.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = match_right_[v];
        if (w == kFree) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      const std::size_t w = match_right_[v];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::size_t size_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> dist_;
};

// Perfect matching on the diagonal-augmented graph: left = a ∪ diag(b),
// right = b ∪ diag(a), with every pair of cost <= threshold.
bool matchable(std::span<const Point> a, std::span<const Point> b,
               double threshold) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  std::vector<std::vector<std::size_t>> adj(na + nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (linf(a[i], b[j]) <= threshold) adj[i].push_back(j);
    }
    if (diagonal_cost(a[i]) <= threshold) adj[i].push_back(nb + i);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    auto& row = adj[na + j];
    if (diagonal_cost(b[j]) <= threshold) row.push_back(j);
    for (std::size_t i = 0; i < na; ++i) row.push_back(nb + i);
  }
  return BipartiteMatcher(std::move(adj)).maximum_matching() == na + nb;
}

}  // namespace

double bottleneck_points(std::span<const std::pair<double, double>> a,
                         std::span<const std::pair<double, double>> b) {
  if (a.empty() && b.empty()) return 0.0;
  std::vector<double> candidates;
  candidates.reserve(a.size() * b.size() + a.size() + b.size() + 1);
  candidates.push_back(0.0);
  for (const auto& p : a) {
    candidates.push_back(diagonal_cost(p));
    for (const auto& q : b) candidates.push_back(linf(p, q));
  }
  for (const auto& q : b) candidates.push_back(diagonal_cost(q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  // The largest candidate is always feasible (everything to the diagonal).
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (matchable(a, b, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  double result = 0.0;
  for (int dim = 0; dim <= 1; ++dim) {
    std::vector<Point> pa, pb;
    for (const auto& p : a.points) {
      if (p.dim == dim) pa.emplace_back(std::min(p.birth, p.death), std::max(p.birth, p.death));
    }
    for (const auto& p : b.points) {
      if (p.dim == dim) pb.emplace_back(std::min(p.birth, p.death), std::max(p.birth, p.death));
    }
    result = std::max(result, bottleneck_points(pa, pb));
  }
  return result;
}

Matrix distance_matrix(std::span<const PersistenceDiagram> diagrams) {
  const std::size_t k = diagrams.size();
  Matrix m(k, k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = bottleneck(diagrams[i], diagrams[j]);
      m(i, j) = d;
      m(j, i) = d;
    }
  }
  return m;
}

}  // namespace mapperscope
