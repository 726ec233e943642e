#include "mapperscope/api.h"

#include <algorithm>
#include <numeric>
#include <optional>

#include "json_codec.h"
#include "mapperscope/analytics.h"
#include "mapperscope/artifact.h"
#include "mapperscope/error.h"
#include "mapperscope/query.h"

namespace mapperscope {
namespace {

// Client-facing failure; carries its HTTP status and the stage that failed.
struct ApiFailure {
  int status;
  std::string code;
  std::string message;
  std::string stage;
};

ApiResponse reply(const json& body, int status = 200) {
  return {status, body.dump(), "application/json"};
}

ApiResponse failure_response(const ApiFailure& f, const json& extra = json()) {
  json body = {{"code", f.code}, {"message", f.message}, {"stage", f.stage}};
  if (extra.is_object()) body.update(extra);
  return reply(body, f.status);
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    if (comma > start) out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

std::size_t require_method(const Session& s, std::string_view name, std::string_view stage) {
  const auto idx = s.method_index(name);
  if (!idx) {
    throw ApiFailure{404, "UnknownMethod", "unknown method '" + std::string(name) + "'",
                     std::string(stage)};
  }
  return *idx;
}

// The importance pair: explicit names, or the first two methods.
std::vector<std::size_t> active_pair(const Session& s, const std::vector<std::string>& names,
                                     std::string_view stage) {
  std::vector<std::size_t> out;
  if (names.empty()) {
    for (std::size_t i = 0; i < std::min<std::size_t>(2, s.methods.size()); ++i) out.push_back(i);
    return out;
  }
  if (names.size() != 2) {
    throw ApiFailure{400, "InvalidArgument", "expected exactly two methods", std::string(stage)};
  }
  for (const auto& n : names) out.push_back(require_method(s, n, stage));
  return out;
}

json importance_json(const Session& s, const std::vector<std::size_t>& pair,
                     std::span<const std::size_t> selection) {
  std::vector<const AttributionSet*> sets;
  for (std::size_t i : pair) sets.push_back(&s.methods[i]);
  const ImportanceLevels lv = importance_levels(sets, selection);
  return {{"methods", lv.methods},
          {"columns", s.table.column_names},
          {"levels", lv.levels},
          {"order", lv.order}};
}

json kde_json(const KdeCurve& c) {
  return {{"grid", c.grid}, {"density", c.density}, {"bandwidth", c.bandwidth}};
}

// Distribution view columns: every feature, then pred and label.
std::vector<std::pair<std::string, std::vector<double>>> view_columns(const Session& s) {
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  for (std::size_t c = 0; c < s.table.d(); ++c) {
    cols.emplace_back(s.table.column_names[c], s.table.values.column(c));
  }
  cols.emplace_back("pred", s.preds.probs);
  cols.emplace_back("label", std::vector<double>(s.labels.labels.begin(), s.labels.labels.end()));
  return cols;
}

// Everything here is a function of the index set and the method pair alone,
// so different interaction paths reaching the same set get the same bytes.
json selection_analytics(const Session& s, const std::vector<std::size_t>& indices,
                         const std::vector<std::size_t>& pair) {
  Selection sel;
  sel.indices = indices;
  const bool empty = indices.empty();

  json densities = json::object();
  for (const auto& g : s.graphs) {
    densities[g.method_name] = empty ? json() : json(selection_density(g, sel));
  }

  const auto cols = view_columns(s);
  struct Entry {
    std::size_t column;
    double divergence;
    json body;
  };
  std::vector<Entry> entries;
  entries.reserve(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& [name, values] = cols[c];
    if (values.empty()) continue;
    const KdeCurve global = kde(values);
    json item = {{"column", name}, {"global", kde_json(global)}};
    double div = 0.0;
    if (empty) {
      item["selection"] = nullptr;
    } else {
      const KdeCurve local = kde(values, indices);
      div = distribution_divergence(global, local);
      item["selection"] = kde_json(local);
    }
    item["divergence"] = div;
    entries.push_back({c, div, std::move(item)});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.divergence > b.divergence;
  });
  json distributions = json::array();
  for (auto& e : entries) distributions.push_back(std::move(e.body));

  std::vector<std::string> names;
  Matrix table(s.table.n(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    names.push_back(cols[c].first);
    for (std::size_t r = 0; r < s.table.n(); ++r) table(r, c) = cols[c].second[r];
  }
  const TableAverages avg = table_averages(table, indices);

  return {{"indices", indices},
          {"count", indices.size()},
          {"densities", std::move(densities)},
          {"distributions", std::move(distributions)},
          {"importance", importance_json(s, pair, indices)},
          {"averages",
           {{"columns", names},
            {"global", avg.global},
            {"selection", avg.selection ? json(*avg.selection) : json()},
            {"difference", avg.difference}}}};
}

std::vector<std::size_t> normalize_indices(std::vector<std::size_t> v, std::size_t n) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (!v.empty() && v.back() >= n) {
    throw ApiFailure{400, "InvalidArgument",
                     "index " + std::to_string(v.back()) + " out of range", "selection"};
  }
  return v;
}

std::vector<std::size_t> indices_from_body(const Session& s, const json& body) {
  const std::string type = body.value("type", "");
  if (type == "points") {
    return normalize_indices(body.at("indices").get<std::vector<std::size_t>>(), s.table.n());
  }
  if (type == "nodes") {
    const auto& graph = s.graphs[require_method(s, body.at("method").get<std::string>(), "selection")];
    std::vector<std::size_t> out;
    for (std::size_t id : body.at("nodeIds").get<std::vector<std::size_t>>()) {
      if (id >= graph.nodes.size()) {
        throw ApiFailure{400, "InvalidArgument", "node " + std::to_string(id) + " out of range",
                         "selection"};
      }
      const auto& m = graph.nodes[id].members;
      out.insert(out.end(), m.begin(), m.end());
    }
    return normalize_indices(std::move(out), s.table.n());
  }
  if (type == "projection") {
    const std::string kind = body.at("kind").get<std::string>();
    const Projection* p = s.projection(kind);
    if (!p) {
      throw ApiFailure{404, "UnknownProjection", "no projection '" + kind + "'", "selection"};
    }
    const auto rect = body.at("rect").get<std::vector<double>>();
    if (rect.size() != 4) {
      throw ApiFailure{400, "InvalidArgument", "rect must be [x0, y0, x1, y1]", "selection"};
    }
    const double x0 = std::min(rect[0], rect[2]), x1 = std::max(rect[0], rect[2]);
    const double y0 = std::min(rect[1], rect[3]), y1 = std::max(rect[1], rect[3]);
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < p->coords.rows(); ++r) {
      const double x = p->coords(r, 0), y = p->coords(r, 1);
      if (x >= x0 && x <= x1 && y >= y0 && y <= y1) out.push_back(r);
    }
    return out;
  }
  if (type == "query") {
    const std::string where = body.at("where").get<std::string>();
    if (where.find_first_not_of(" \t\r\n") == std::string::npos) return {};
    return run_query(where, s.table, s.preds, s.labels).indices;
  }
  throw ApiFailure{400, "InvalidArgument",
                   "selection type must be one of query, nodes, points, projection", "selection"};
}

json meta_json(const Session& s) {
  json params = json::object();
  json methods = json::array();
  for (const auto& g : s.graphs) {
    methods.push_back(g.method_name);
    params[g.method_name] = cover_params_to_json(g.params);
  }
  json kinds = json::array();
  for (const auto& p : s.projections) kinds.push_back(p.kind);
  return {{"version", std::string(kArtifactVersion)},
          {"methods", std::move(methods)},
          {"n", s.table.n()},
          {"d", s.table.d()},
          {"columns", s.table.column_names},
          {"params", std::move(params)},
          {"projections", std::move(kinds)},
          {"provenance", provenance_to_json(s.provenance)}};
}

json mapper_json(const Session& s, std::string_view method, const Api::QueryParams& q) {
  const auto& graph = s.graphs[require_method(s, method, "mapper")];
  const auto color_it = q.find("color");
  const std::string color = color_it == q.end() ? "pred" : color_it->second;
  const auto agg_it = q.find("agg");
  const std::string agg_name = agg_it == q.end() ? "mean" : agg_it->second;
  const auto agg = parse_aggregation(agg_name);
  if (!agg) {
    throw ApiFailure{400, "InvalidArgument", "unknown aggregation '" + agg_name + "'", "mapper"};
  }
  const auto values = attribute_values(s.table, s.preds, s.labels, color);
  json out = graph_to_json(graph, true);
  out["color"] = {{"attribute", color},
                  {"agg", std::string(aggregation_name(*agg))},
                  {"values", node_aggregate(graph, values, *agg)}};
  return out;
}

json distance_json(const Session& s) {
  json names = json::array();
  for (const auto& g : s.graphs) names.push_back(g.method_name);
  return {{"methods", std::move(names)}, {"distances", matrix_to_json(s.distances)}};
}

json projection_json(const Session& s, const Api::QueryParams& q) {
  const auto it = q.find("kind");
  const std::string kind = it == q.end() ? "pca" : it->second;
  const Projection* p = s.projection(kind);
  if (!p) throw ApiFailure{404, "UnknownProjection", "no projection '" + kind + "'", "projection"};
  std::vector<bool> correct;
  correct.reserve(s.preds.probs.size());
  for (std::size_t i = 0; i < s.preds.probs.size(); ++i) {
    correct.push_back((s.preds.probs[i] > 0.5 ? 1 : 0) == s.labels.labels[i]);
  }
  return {{"kind", kind},
          {"coords", matrix_to_json(p->coords)},
          {"labels", s.labels.labels},
          {"preds", s.preds.probs},
          {"correct", correct}};
}

json attributions_json(const Session& s, const Api::QueryParams& q) {
  const auto it = q.find("methods");
  const auto pair = active_pair(s, it == q.end() ? std::vector<std::string>{}
                                                 : split_names(it->second),
                                "attributions");
  std::vector<std::size_t> all(s.table.n());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return importance_json(s, pair, all);
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownMethod: return 404;
    default: return 400;
  }
}

}  // namespace

Api::Api(std::shared_ptr<const Session> session) : session_(std::move(session)) {
  if (!session_) throw Error(ErrorCode::kInvalidArgument, "api needs a session");
}

ApiResponse Api::handle(std::string_view http_method, std::string_view path,
                        const QueryParams& params, std::string_view body) const {
  const Session& s = *session_;
  std::string stage = "request";
  try {
    constexpr std::string_view kMapperPrefix = "/api/mapper/";
    const bool is_get = http_method == "GET";
    const bool is_post = http_method == "POST";
    auto only = [&](bool allowed) {
      if (!allowed) {
        throw ApiFailure{405, "MethodNotAllowed",
                         std::string(http_method) + " not allowed on " + std::string(path), stage};
      }
    };

    if (path == "/api/session/meta") {
      stage = "meta";
      only(is_get);
      return reply(meta_json(s));
    }
    if (path.starts_with(kMapperPrefix) && path.size() > kMapperPrefix.size()) {
      stage = "mapper";
      only(is_get);
      return reply(mapper_json(s, path.substr(kMapperPrefix.size()), params));
    }
    if (path == "/api/distance-matrix") {
      stage = "distances";
      only(is_get);
      return reply(distance_json(s));
    }
    if (path == "/api/projection") {
      stage = "projection";
      only(is_get);
      return reply(projection_json(s, params));
    }
    if (path == "/api/attributions") {
      stage = "attributions";
      only(is_get);
      return reply(attributions_json(s, params));
    }
    if (path == "/api/selection") {
      stage = "selection";
      only(is_post);
      json req;
      try {
        req = json::parse(body);
      } catch (const json::exception&) {
        throw ApiFailure{400, "InvalidArgument", "request body is not valid JSON", stage};
      }
      if (!req.is_object()) {
        throw ApiFailure{400, "InvalidArgument", "request body must be an object", stage};
      }
      std::vector<std::string> names;
      if (req.contains("methods")) names = req.at("methods").get<std::vector<std::string>>();
      const auto pair = active_pair(s, names, stage);
      if (req.value("type", "") == "query") stage = "query";
      const auto indices = indices_from_body(s, req);
      stage = "selection";
      return reply(selection_analytics(s, indices, pair));
    }
    throw ApiFailure{404, "NotFound", "no route for " + std::string(path), stage};
  } catch (const ApiFailure& f) {
    return failure_response(f);
  } catch (const QuerySyntaxError& e) {
    return failure_response({400, "SyntaxError", e.what(), stage},
                            {{"position", e.position()}, {"expected", e.expected()}});
  } catch (const Error& e) {
    return failure_response(
        {status_for(e.code()), std::string(error_code_name(e.code())), e.what(), stage});
  } catch (const json::exception& e) {
    return failure_response({400, "InvalidArgument", e.what(), stage});
  } catch (const std::exception& e) {
    return failure_response({500, "Internal", e.what(), stage});
  }
}

}  // namespace mapperscope
