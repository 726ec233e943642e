#include "mapperscope/types.h"

#include <cmath>

#include "mapperscope/error.h"

namespace mapperscope {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonNumericCell: return "NonNumericCell";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kCorruptArtifact: return "CorruptArtifact";
    case ErrorCode::kEmptyLens: return "EmptyLens";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kUnknownMethod: return "UnknownMethod";
  }
  return "Unknown";
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "row " + std::to_string(r) + " has " +
                      std::to_string(rows[r].size()) + " entries, expected " +
                      std::to_string(m.cols()));
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

void check_cover_params(const CoverParams& params) {
  if (params.resolution < 1) {
    throw Error(ErrorCode::kInvalidArgument, "resolution must be >= 1");
  }
  if (!(params.gain > 0.0 && params.gain < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gain must lie in (0, 1)");
  }
  if (!(params.delta >= 0.0) || !std::isfinite(params.delta)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must be finite and >= 0");
  }
}

std::string_view pair_kind_name(PairKind kind) {
  switch (kind) {
    case PairKind::kOrdinary: return "Ord";
    case PairKind::kExtended: return "Ext";
    case PairKind::kRelative: return "Rel";
  }
  return "?";
}

std::optional<PairKind> parse_pair_kind(std::string_view name) {
  if (name == "Ord") return PairKind::kOrdinary;
  if (name == "Ext") return PairKind::kExtended;
  if (name == "Rel") return PairKind::kRelative;
  return std::nullopt;
}

std::optional<std::size_t> Session::method_index(std::string_view name) const {
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods[i].method_name == name) return i;
  }
  return std::nullopt;
}

const Projection* Session::projection(std::string_view kind) const {
  for (const auto& p : projections) {
    if (p.kind == kind) return &p;
  }
  return nullptr;
}

}  // namespace mapperscope
