#include "mapperscope/session.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "mapperscope/mapper.h"

namespace mapperscope {
namespace {

constexpr double kTolerance = 1e-12;

bool all_finite(const Matrix& m) {
  return std::all_of(m.data().begin(), m.data().end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

std::vector<std::string> validate_graph(const MapperGraph& graph,
                                        const PredictionVector& lens) {
  std::vector<std::string> out;
  const std::string where = "graph '" + graph.method_name + "': ";
  const std::size_t n = lens.size();
  bool members_ok = true;
  for (std::size_t v = 0; v < graph.nodes.size(); ++v) {
    const MapperNode& node = graph.nodes[v];
    const std::string tag = where + "node " + std::to_string(v) + " ";
    if (node.id != v) out.push_back(tag + "id does not match its position");
    if (node.members.empty()) {
      out.push_back(tag + "has no members");
      members_ok = false;
      continue;
    }
    if (!std::is_sorted(node.members.begin(), node.members.end()) ||
        std::adjacent_find(node.members.begin(), node.members.end()) != node.members.end()) {
      out.push_back(tag + "members not sorted and unique");
      members_ok = false;
    }
    if (node.members.back() >= n) {
      out.push_back(tag + "member index out of range");
      members_ok = false;
      continue;
    }
    double lo = lens.probs[node.members.front()];
    double hi = lo;
    for (std::size_t m : node.members) {
      lo = std::min(lo, lens.probs[m]);
      hi = std::max(hi, lens.probs[m]);
    }
    if (!(node.lens_value >= lo - kTolerance && node.lens_value <= hi + kTolerance)) {
      out.push_back(tag + "lens value outside its members' range");
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : graph.edges) {
    if (e.source == e.target) out.push_back(where + "self edge on node " + std::to_string(e.source));
    if (e.source >= graph.nodes.size() || e.target >= graph.nodes.size()) {
      out.push_back(where + "edge references a missing node");
      members_ok = false;
      continue;
    }
    const auto key = std::minmax(e.source, e.target);
    if (!seen.insert(key).second) {
      out.push_back(where + "duplicate edge " + std::to_string(key.first) + "-" +
                    std::to_string(key.second));
    }
  }
  if (!members_ok) return out;

  // Exhaustive re-check of the nerve.
  const auto expected = nerve_edges(graph.nodes, n);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> want, have;
  for (const auto& e : expected) want.emplace(e.source, e.target, e.shared);
  for (const auto& e : graph.edges) {
    const auto [a, b] = std::minmax(e.source, e.target);
    have.emplace(a, b, e.shared);
  }
  if (want != have) out.push_back(where + "edges do not match member intersections");

  std::vector<char> covered(n, 0);
  for (const auto& node : graph.nodes) {
    for (std::size_t m : node.members) covered[m] = 1;
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    out.push_back(where + "some observations are not covered by any node");
  }
  return out;
}

std::vector<std::string> validate_session(const Session& s) {
  std::vector<std::string> out;
  const std::size_t n = s.table.n();
  const std::size_t d = s.table.d();

  if (n < 2) out.push_back("feature table needs at least 2 observations");
  if (s.table.column_names.size() != d) out.push_back("column name count differs from feature count");
  {
    std::set<std::string> names(s.table.column_names.begin(), s.table.column_names.end());
    if (names.size() != s.table.column_names.size()) out.push_back("duplicate column names");
  }
  if (!all_finite(s.table.values)) out.push_back("feature table has non-finite entries");

  // Graph checks read the lens, so a bad lens is reported once, here.
  bool lens_ok = false;
  if (s.preds.size() != n) {
    out.push_back("prediction count mismatch");
  } else if (std::any_of(s.preds.probs.begin(), s.preds.probs.end(),
                         [](double p) { return !(p >= 0.0 && p <= 1.0); })) {
    out.push_back("prob out of [0,1]");
  } else {
    lens_ok = true;
  }
  if (s.labels.size() != n) {
    out.push_back("label count mismatch");
  } else if (std::any_of(s.labels.labels.begin(), s.labels.labels.end(),
                         [](int l) { return l != 0 && l != 1; })) {
    out.push_back("label not binary");
  }

  std::set<std::string> method_names;
  for (const auto& m : s.methods) {
    const std::string tag = "method '" + m.method_name + "': ";
    if (!method_names.insert(m.method_name).second) out.push_back(tag + "duplicate method name");
    if (m.attributions.rows() != n) out.push_back(tag + "row count mismatch");
    if (m.attributions.cols() != d) out.push_back(tag + "column count mismatch");
    if (!all_finite(m.attributions)) out.push_back(tag + "non-finite attributions");
  }

  const std::size_t k = s.methods.size();
  if (s.graphs.size() != k) {
    out.push_back("graph count differs from method count");
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      if (s.graphs[i].method_name != s.methods[i].method_name) {
        out.push_back("graph " + std::to_string(i) + " is not aligned with method '" +
                      s.methods[i].method_name + "'");
      }
      if (!lens_ok) continue;
      for (auto& v : validate_graph(s.graphs[i], s.preds)) out.push_back(std::move(v));
    }
  }
  if (s.diagrams.size() != k) out.push_back("diagram count differs from method count");
  for (std::size_t i = 0; i < s.diagrams.size(); ++i) {
    for (const auto& p : s.diagrams[i].points) {
      const std::string tag = "diagram " + std::to_string(i) + ": ";
      if (!std::isfinite(p.birth) || !std::isfinite(p.death)) {
        out.push_back(tag + "non-finite point");
      } else if (p.dim == 0 && p.kind == PairKind::kRelative) {
        out.push_back(tag + "dimension 0 point with relative subtype");
      } else if (p.dim == 1 && p.kind == PairKind::kOrdinary) {
        out.push_back(tag + "dimension 1 point with ordinary subtype");
      } else if (p.dim != 0 && p.dim != 1) {
        out.push_back(tag + "dimension outside {0, 1}");
      }
    }
  }

  if (s.distances.rows() != k || s.distances.cols() != k) {
    out.push_back("distance matrix is not k x k");
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      if (s.distances(i, i) != 0.0) out.push_back("distance matrix diagonal is not zero");
      for (std::size_t j = i + 1; j < k; ++j) {
        if (s.distances(i, j) != s.distances(j, i)) {
          out.push_back("distance matrix is not symmetric");
        }
        if (!(s.distances(i, j) >= 0.0)) out.push_back("negative distance");
      }
    }
  }

  for (const auto& p : s.projections) {
    if (p.coords.rows() != n || p.coords.cols() != 2) {
      out.push_back("projection '" + p.kind + "' is not n x 2");
    } else if (!all_finite(p.coords)) {
      out.push_back("projection '" + p.kind + "' has non-finite coordinates");
    }
  }
  return out;
}

}  // namespace mapperscope
