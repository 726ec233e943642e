#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mapperscope/types.h"

namespace mapperscope {

// ---------------------------------------------------------------------------
// Node colouring

enum class Aggregation { kMean, kMedian, kMax, kMin, kStd };

std::optional<Aggregation> parse_aggregation(std::string_view name);
std::string_view aggregation_name(Aggregation agg);

// Aggregate of `values` over the given indices. kStd is the population
// standard deviation. Empty input gives 0.
double aggregate(std::span<const double> values,
                 std::span<const std::size_t> indices, Aggregation agg);

// Column values for a feature name or the pseudo-columns "pred" / "label".
// Throws Error(kUnknownColumn).
std::vector<double> attribute_values(const FeatureTable& table,
                                     const PredictionVector& preds,
                                     const LabelVector& labels,
                                     std::string_view attribute);

std::vector<double> node_aggregate(const MapperGraph& graph,
                                   std::span<const double> values,
                                   Aggregation agg);

// Per node |members ∩ selection| / |members|.
std::vector<double> selection_density(const MapperGraph& graph,
                                      const Selection& selection);

// With a selection the colouring switches to selection density.
std::vector<double> node_colors(const MapperGraph& graph,
                                std::span<const double> values,
                                Aggregation agg,
                                const Selection* selection = nullptr);

// ---------------------------------------------------------------------------
// Importance levels

inline constexpr double kImportanceScale = 5.0;

struct ImportanceLevels {
  std::vector<std::string> methods;
  std::vector<std::vector<double>> levels;  // [method][feature], within [-5, 5]
  std::vector<std::size_t> order;           // features by combined |level| desc
};

// Largest |attribution| over every observation and feature.
double max_abs_attribution(const AttributionSet& method);

// Per-observation levels 5 * a / max|a| (all zero when max|a| = 0).
Matrix observation_levels(const AttributionSet& method);

// Mean level over the selected rows per feature, scaled by each method's
// global max |attribution|. An empty selection yields all-zero levels.
ImportanceLevels importance_levels(std::span<const AttributionSet* const> methods,
                                   std::span<const std::size_t> selection);

ImportanceLevels importance_levels(std::span<const AttributionSet> methods,
                                   std::span<const std::size_t> selection);

// ---------------------------------------------------------------------------
// Kernel density estimates

inline constexpr std::size_t kKdeGridSize = 128;

struct KdeCurve {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
};

// Silverman's rule 0.9 * min(sd, IQR / 1.34) * n^(-1/5) with sample sd and
// linearly interpolated quartiles; falls back to 1e-3 * max(1, |mean|) when
// the rule gives zero. Throws Error(kInvalidArgument) on empty input.
double silverman_bandwidth(std::span<const double> values);

// Gaussian KDE density at x.
double kde_density_at(std::span<const double> values, double bandwidth, double x);

// 128 points spanning [min, max] of `values` padded by 3h, h the bandwidth
// of `values`.
std::vector<double> kde_grid(std::span<const double> values);

// KDE of `values` (optionally restricted to `selection`) evaluated on the
// grid of the full `values`, so global and selection curves overlay.
KdeCurve kde(std::span<const double> values,
             std::span<const std::size_t> selection);
KdeCurve kde(std::span<const double> values);

// Trapezoidal integral of a curve over its grid.
double kde_mass(const KdeCurve& curve);

// Trapezoidal L1 distance between two curves on the same grid.
double distribution_divergence(const KdeCurve& global, const KdeCurve& selection);

// ---------------------------------------------------------------------------
// Projection and table summaries

// Centred data projected on the top-2 principal directions. Each direction is
// signed so its largest-magnitude loading is positive.
Matrix pca_project(const Matrix& values);
Matrix pca_project(const FeatureTable& table);

struct TableAverages {
  std::vector<double> global;
  std::optional<std::vector<double>> selection;  // absent for empty selection
  std::vector<double> difference;                // selection - global, 0 if absent
};

TableAverages table_averages(const Matrix& values,
                             std::span<const std::size_t> selection);

}  // namespace mapperscope
