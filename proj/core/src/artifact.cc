#include "mapperscope/artifact.h"

#include <fstream>
#include <sstream>

#include "json_codec.h"
#include "mapperscope/error.h"
#include "mapperscope/session.h"

namespace mapperscope {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(json(std::vector<double>(m.row(r).begin(), m.row(r).end())));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  return Matrix::from_rows(j.get<std::vector<std::vector<double>>>());
}

json cover_params_to_json(const CoverParams& p) {
  return {{"resolution", p.resolution}, {"gain", p.gain}, {"delta", p.delta}, {"seed", p.seed}};
}

CoverParams cover_params_from_json(const json& j) {
  CoverParams p;
  p.resolution = j.at("resolution").get<int>();
  p.gain = j.at("gain").get<double>();
  p.delta = j.at("delta").get<double>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

json graph_to_json(const MapperGraph& g, bool with_members) {
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    json node = {{"id", n.id},
                 {"size", n.members.size()},
                 {"intervalIndex", n.interval_index},
                 {"lensValue", n.lens_value}};
    if (with_members) node["members"] = n.members;
    nodes.push_back(std::move(node));
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"source", e.source}, {"target", e.target}, {"shared", e.shared}});
  }
  return {{"method", g.method_name},
          {"params", cover_params_to_json(g.params)},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

MapperGraph graph_from_json(const json& j) {
  MapperGraph g;
  g.method_name = j.at("method").get<std::string>();
  g.params = cover_params_from_json(j.at("params"));
  for (const auto& n : j.at("nodes")) {
    MapperNode node;
    node.id = n.at("id").get<std::size_t>();
    node.members = n.at("members").get<std::vector<std::size_t>>();
    node.interval_index = n.at("intervalIndex").get<int>();
    node.lens_value = n.at("lensValue").get<double>();
    g.nodes.push_back(std::move(node));
  }
  for (const auto& e : j.at("edges")) {
    g.edges.push_back({e.at("source").get<std::size_t>(), e.at("target").get<std::size_t>(),
                       e.at("shared").get<std::size_t>()});
  }
  return g;
}

json diagram_to_json(const PersistenceDiagram& d) {
  json points = json::array();
  for (const auto& p : d.points) {
    points.push_back({{"dim", p.dim},
                      {"subtype", pair_kind_name(p.kind)},
                      {"birth", p.birth},
                      {"death", p.death}});
  }
  return points;
}

PersistenceDiagram diagram_from_json(const json& j) {
  PersistenceDiagram d;
  for (const auto& p : j) {
    const auto kind = parse_pair_kind(p.at("subtype").get<std::string>());
    if (!kind) throw Error(ErrorCode::kCorruptArtifact, "unknown persistence subtype");
    d.points.push_back({p.at("birth").get<double>(), p.at("death").get<double>(),
                        p.at("dim").get<int>(), *kind});
  }
  return d;
}

json stability_to_json(const StabilityReport& r) {
  return {{"grid", r.grid},
          {"scores", r.scores},
          {"chosen", r.chosen},
          {"delta", r.delta},
          {"gain", r.gain},
          {"seed", r.seed},
          {"bootstrapCount", r.bootstrap_count},
          {"subsampleCount", r.subsample_count}};
}

StabilityReport stability_from_json(const json& j) {
  StabilityReport r;
  r.grid = j.at("grid").get<std::vector<int>>();
  r.scores = j.at("scores").get<std::vector<double>>();
  r.chosen = j.at("chosen").get<int>();
  r.delta = j.at("delta").get<double>();
  r.gain = j.at("gain").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.bootstrap_count = j.at("bootstrapCount").get<int>();
  r.subsample_count = j.at("subsampleCount").get<int>();
  return r;
}

namespace {

json timings_to_json(const std::vector<StageTiming>& timings) {
  json out = json::array();
  for (const auto& t : timings) out.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  return out;
}

std::vector<StageTiming> timings_from_json(const json& j) {
  std::vector<StageTiming> out;
  for (const auto& t : j) {
    out.push_back({t.at("stage").get<std::string>(), t.at("seconds").get<double>()});
  }
  return out;
}

}  // namespace

json provenance_to_json(const Provenance& p) {
  json methods = json::array();
  for (const auto& m : p.methods) {
    methods.push_back({{"method", m.method},
                       {"deltaEstimated", m.delta_estimated},
                       {"resolutionSearched", m.resolution_searched},
                       {"stability", m.stability ? stability_to_json(*m.stability) : json()},
                       {"summarized", m.summarized},
                       {"summarizeFixpoint", m.summarize_fixpoint},
                       {"rawNodeCount", m.raw_node_count},
                       {"timings", timings_to_json(m.timings)}});
  }
  return {{"seed", p.seed},
          {"generator", p.generator},
          {"methods", std::move(methods)},
          {"timings", timings_to_json(p.timings)}};
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  p.seed = j.at("seed").get<std::uint64_t>();
  p.generator = j.at("generator").get<std::string>();
  for (const auto& m : j.at("methods")) {
    MethodProvenance mp;
    mp.method = m.at("method").get<std::string>();
    mp.delta_estimated = m.at("deltaEstimated").get<bool>();
    mp.resolution_searched = m.at("resolutionSearched").get<bool>();
    if (!m.at("stability").is_null()) mp.stability = stability_from_json(m.at("stability"));
    mp.summarized = m.at("summarized").get<bool>();
    mp.summarize_fixpoint = m.at("summarizeFixpoint").get<bool>();
    mp.raw_node_count = m.at("rawNodeCount").get<std::size_t>();
    mp.timings = timings_from_json(m.at("timings"));
    p.methods.push_back(std::move(mp));
  }
  p.timings = timings_from_json(j.at("timings"));
  return p;
}

std::string session_to_json(const Session& s) {
  const auto violations = validate_session(s);
  if (!violations.empty()) {
    std::string msg = "refusing to save an inconsistent session:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw Error(ErrorCode::kInvalidArgument, msg);
  }
  json methods = json::array();
  for (std::size_t i = 0; i < s.methods.size(); ++i) {
    methods.push_back({{"name", s.methods[i].method_name},
                       {"attributions", matrix_to_json(s.methods[i].attributions)},
                       {"graph", graph_to_json(s.graphs[i])},
                       {"diagram", diagram_to_json(s.diagrams[i])}});
  }
  json projections = json::array();
  for (const auto& p : s.projections) {
    projections.push_back({{"kind", p.kind}, {"coords", matrix_to_json(p.coords)}});
  }
  const json doc = {
      {"version", std::string(kArtifactVersion)},
      {"table", {{"columns", s.table.column_names}, {"values", matrix_to_json(s.table.values)}}},
      {"preds", s.preds.probs},
      {"labels", s.labels.labels},
      {"methods", std::move(methods)},
      {"distances", matrix_to_json(s.distances)},
      {"projections", std::move(projections)},
      {"provenance", provenance_to_json(s.provenance)},
  };
  return doc.dump();
}

Session session_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kCorruptArtifact, std::string("artifact is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version")) {
    throw Error(ErrorCode::kCorruptArtifact, "artifact has no version tag");
  }
  if (!doc["version"].is_string() || doc["version"].get<std::string>() != kArtifactVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "unsupported artifact version " + doc["version"].dump() + ", expected \"" +
                    std::string(kArtifactVersion) + "\"");
  }
  try {
    Session s;
    const json& table = doc.at("table");
    s.table.column_names = table.at("columns").get<std::vector<std::string>>();
    s.table.values = matrix_from_json(table.at("values"));
    if (s.table.values.empty()) s.table.values = Matrix(0, s.table.column_names.size());
    s.preds.probs = doc.at("preds").get<std::vector<double>>();
    s.labels.labels = doc.at("labels").get<std::vector<int>>();
    for (const auto& m : doc.at("methods")) {
      AttributionSet a;
      a.method_name = m.at("name").get<std::string>();
      a.attributions = matrix_from_json(m.at("attributions"));
      s.methods.push_back(std::move(a));
      s.graphs.push_back(graph_from_json(m.at("graph")));
      s.diagrams.push_back(diagram_from_json(m.at("diagram")));
    }
    s.distances = matrix_from_json(doc.at("distances"));
    for (const auto& p : doc.at("projections")) {
      s.projections.push_back({p.at("kind").get<std::string>(), matrix_from_json(p.at("coords"))});
    }
    s.provenance = provenance_from_json(doc.at("provenance"));
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kCorruptArtifact, std::string("malformed artifact: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCorruptArtifact) throw;
    throw Error(ErrorCode::kCorruptArtifact, std::string("malformed artifact: ") + e.what());
  }
}

void save_session(const Session& session, const std::filesystem::path& path) {
  const std::string text = session_to_json(session);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kMissingFile, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kMissingFile, "failed writing '" + path.string() + "'");
}

Session load_session(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return session_from_json(buffer.str());
}

}  // namespace mapperscope
