#include "mapperscope/ingestion.h"

#include <cmath>
#include <set>

#include "mapperscope/csv.h"
#include "mapperscope/error.h"

namespace mapperscope {
namespace {

std::vector<double> single_column(const std::filesystem::path& path,
                                  const std::string& name, std::size_t n) {
  CsvTable csv = read_csv(path);
  if (csv.header.size() != 1 || csv.header.front() != name) {
    throw Error(ErrorCode::kShapeMismatch,
                path.string() + ": expected a single column '" + name + "'");
  }
  if (csv.values.rows() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                path.string() + ": expected " + std::to_string(n) + " rows, got " +
                    std::to_string(csv.values.rows()));
  }
  return csv.values.column(0);
}

}  // namespace

void check_manifest(const SessionManifest& m) {
  if (m.attributions.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "at least two methods required");
  }
  std::set<std::string> names;
  std::set<std::filesystem::path> paths{m.data, m.preds, m.labels};
  if (paths.size() != 3) throw Error(ErrorCode::kInvalidArgument, "input paths must be distinct");
  for (const auto& a : m.attributions) {
    if (a.method.empty()) throw Error(ErrorCode::kInvalidArgument, "empty method name");
    if (!names.insert(a.method).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate method name '" + a.method + "'");
    }
    if (!paths.insert(a.path).second) {
      throw Error(ErrorCode::kInvalidArgument, "path used twice: " + a.path.string());
    }
  }
  std::set<std::string> kinds;
  for (const auto& p : m.projections) {
    if (p.kind != "tsne" && p.kind != "umap" && p.kind != "external") {
      throw Error(ErrorCode::kInvalidArgument, "unknown projection kind '" + p.kind + "'");
    }
    if (!kinds.insert(p.kind).second) {
      throw Error(ErrorCode::kInvalidArgument, "projection kind given twice: " + p.kind);
    }
    if (!paths.insert(p.path).second) {
      throw Error(ErrorCode::kInvalidArgument, "path used twice: " + p.path.string());
    }
  }
  const BuildOptions& o = m.options;
  if (!(o.gain > 0.0 && o.gain < 1.0)) throw Error(ErrorCode::kInvalidArgument, "gain must lie in (0, 1)");
  if (o.resolution && *o.resolution < 1) throw Error(ErrorCode::kInvalidArgument, "resolution must be >= 1");
  if (o.delta && !(*o.delta >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be >= 0");
  if (o.grid_low < 1 || o.grid_high < o.grid_low) {
    throw Error(ErrorCode::kInvalidArgument, "grid must satisfy 1 <= LO <= HI");
  }
  if (o.bootstrap < 1) throw Error(ErrorCode::kInvalidArgument, "bootstrap count must be >= 1");
  if (o.subsamples < 1) throw Error(ErrorCode::kInvalidArgument, "subsample count must be >= 1");
  if (!(o.similarity_threshold > 0.0 && o.similarity_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "similarity threshold must lie in (0, 1]");
  }
}

SessionInputs load_session_inputs(const SessionManifest& m) {
  SessionInputs in;
  CsvTable data = read_csv(m.data);
  if (data.values.rows() < 2) {
    throw Error(ErrorCode::kShapeMismatch, m.data.string() + ": need at least 2 rows");
  }
  {
    std::set<std::string> unique(data.header.begin(), data.header.end());
    if (unique.size() != data.header.size()) {
      throw Error(ErrorCode::kParseError, m.data.string() + ": duplicate column names", {1, 1});
    }
  }
  in.table.column_names = data.header;
  in.table.values = std::move(data.values);
  const std::size_t n = in.table.n();

  in.preds.probs = single_column(m.preds, "pred", n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = in.preds.probs[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kParseError,
                  m.preds.string() + ":" + std::to_string(i + 2) + ": prob out of [0,1]",
                  {i + 2, 1});
    }
  }
  const auto labels = single_column(m.labels, "label", n);
  in.labels.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != 0.0 && labels[i] != 1.0) {
      throw Error(ErrorCode::kParseError,
                  m.labels.string() + ":" + std::to_string(i + 2) + ": label must be 0 or 1",
                  {i + 2, 1});
    }
    in.labels.labels.push_back(static_cast<int>(labels[i]));
  }

  for (const auto& entry : m.attributions) {
    CsvTable csv = read_csv(entry.path);
    if (csv.header.size() != in.table.column_names.size()) {
      throw Error(ErrorCode::kShapeMismatch,
                  entry.path.string() + ": expected " +
                      std::to_string(in.table.d()) + " columns, got " +
                      std::to_string(csv.header.size()));
    }
    if (csv.header != in.table.column_names) {
      throw Error(ErrorCode::kShapeMismatch,
                  entry.path.string() + ": column order mismatch with " + m.data.string());
    }
    if (csv.values.rows() != n) {
      throw Error(ErrorCode::kShapeMismatch,
                  entry.path.string() + ": expected " + std::to_string(n) +
                      " rows, got " + std::to_string(csv.values.rows()));
    }
    in.methods.push_back({entry.method, std::move(csv.values)});
  }

  for (const auto& entry : m.projections) {
    CsvTable csv = read_csv(entry.path);
    if (csv.header != std::vector<std::string>{"x", "y"}) {
      throw Error(ErrorCode::kShapeMismatch, entry.path.string() + ": expected columns x,y");
    }
    if (csv.values.rows() != n) {
      throw Error(ErrorCode::kShapeMismatch,
                  entry.path.string() + ": expected " + std::to_string(n) +
                      " rows, got " + std::to_string(csv.values.rows()));
    }
    in.projections.push_back({entry.kind, std::move(csv.values)});
  }
  return in;
}

}  // namespace mapperscope
