#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace mapperscope {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  // All rows must have the same length; throws Error(kShapeMismatch) otherwise.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::vector<double> column(std::size_t c) const;

  // Rows taken in the given order (repeats allowed).
  Matrix select_rows(std::span<const std::size_t> indices) const;

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------
// Inputs

struct FeatureTable {
  std::vector<std::string> column_names;
  Matrix values;  // n x d

  std::size_t n() const { return values.rows(); }
  std::size_t d() const { return values.cols(); }
  bool operator==(const FeatureTable&) const = default;
};

// Per-observation feature attributions from one explanation method; columns
// follow FeatureTable::column_names.
struct AttributionSet {
  std::string method_name;
  Matrix attributions;
  bool operator==(const AttributionSet&) const = default;
};

// Predicted probability of the target class; this is the Mapper lens.
struct PredictionVector {
  std::vector<double> probs;
  std::size_t size() const { return probs.size(); }
  bool operator==(const PredictionVector&) const = default;
};

struct LabelVector {
  std::vector<int> labels;
  std::size_t size() const { return labels.size(); }
  bool operator==(const LabelVector&) const = default;
};

// ---------------------------------------------------------------------------
// Mapper

inline constexpr double kDefaultGain = 0.4;

struct CoverParams {
  int resolution = 1;
  double gain = kDefaultGain;
  double delta = 0.0;
  std::uint64_t seed = 0;
  bool operator==(const CoverParams&) const = default;
};

// Throws Error(kInvalidArgument) when resolution < 1, gain outside (0,1) or
// delta < 0.
void check_cover_params(const CoverParams& params);

struct MapperNode {
  std::size_t id = 0;
  std::vector<std::size_t> members;  // sorted, unique
  int interval_index = 0;
  double lens_value = 0.0;  // mean lens over members
  bool operator==(const MapperNode&) const = default;
};

struct MapperEdge {
  std::size_t source = 0;  // source < target
  std::size_t target = 0;
  std::size_t shared = 0;  // |members(source) ∩ members(target)|
  bool operator==(const MapperEdge&) const = default;
};

struct MapperGraph {
  std::vector<MapperNode> nodes;
  std::vector<MapperEdge> edges;  // sorted by (source, target)
  CoverParams params;
  std::string method_name;
  bool operator==(const MapperGraph&) const = default;
};

// ---------------------------------------------------------------------------
// Persistence

enum class PairKind { kOrdinary, kExtended, kRelative };

std::string_view pair_kind_name(PairKind kind);  // "Ord", "Ext", "Rel"
std::optional<PairKind> parse_pair_kind(std::string_view name);

struct PersistencePoint {
  double birth = 0.0;
  double death = 0.0;
  int dim = 0;
  PairKind kind = PairKind::kOrdinary;
  bool operator==(const PersistencePoint&) const = default;
};

struct PersistenceDiagram {
  std::vector<PersistencePoint> points;
  bool operator==(const PersistenceDiagram&) const = default;
};

// ---------------------------------------------------------------------------
// Selections

struct NodeBrush {
  std::string method;
  std::vector<std::size_t> node_ids;
  bool operator==(const NodeBrush&) const = default;
};

struct ProjectionBrush {
  std::string kind;
  double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;
  bool operator==(const ProjectionBrush&) const = default;
};

struct QuerySource {
  std::string text;
  bool operator==(const QuerySource&) const = default;
};

// Indices supplied directly by a client.
struct ExplicitPoints {
  bool operator==(const ExplicitPoints&) const = default;
};

using SelectionProvenance =
    std::variant<NodeBrush, ProjectionBrush, QuerySource, ExplicitPoints>;

struct Selection {
  std::vector<std::size_t> indices;  // sorted, unique
  SelectionProvenance provenance = ExplicitPoints{};
  bool operator==(const Selection&) const = default;
};

// ---------------------------------------------------------------------------
// Session

struct Projection {
  std::string kind;  // "pca", "tsne", "umap" or "external"
  Matrix coords;     // n x 2
  bool operator==(const Projection&) const = default;
};

struct StabilityReport {
  std::vector<int> grid;
  std::vector<double> scores;  // mean bootstrap bottleneck distance per grid entry
  int chosen = 0;
  double delta = 0.0;
  double gain = kDefaultGain;
  std::uint64_t seed = 0;
  int bootstrap_count = 0;
  int subsample_count = 0;
  bool operator==(const StabilityReport&) const = default;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
  bool operator==(const StageTiming&) const = default;
};

struct MethodProvenance {
  std::string method;
  bool delta_estimated = false;
  bool resolution_searched = false;
  std::optional<StabilityReport> stability;
  bool summarized = true;
  bool summarize_fixpoint = false;
  std::size_t raw_node_count = 0;
  std::vector<StageTiming> timings;
  bool operator==(const MethodProvenance&) const = default;
};

struct Provenance {
  std::uint64_t seed = 0;
  std::string generator;
  std::vector<MethodProvenance> methods;
  std::vector<StageTiming> timings;
  bool operator==(const Provenance&) const = default;
};

// Immutable once built. Observation identity is the row index into `table`;
// per-method vectors (methods, graphs, diagrams) are aligned by position and
// carry matching method names.
struct Session {
  FeatureTable table;
  PredictionVector preds;
  LabelVector labels;
  std::vector<AttributionSet> methods;
  std::vector<MapperGraph> graphs;
  std::vector<PersistenceDiagram> diagrams;
  Matrix distances;  // k x k
  std::vector<Projection> projections;
  Provenance provenance;

  std::optional<std::size_t> method_index(std::string_view name) const;
  const Projection* projection(std::string_view kind) const;
  bool operator==(const Session&) const = default;
};

}  // namespace mapperscope
