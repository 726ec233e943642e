#include "mapperscope/analytics.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mapperscope/error.h"

namespace mapperscope {

std::optional<Aggregation> parse_aggregation(std::string_view name) {
  if (name == "mean") return Aggregation::kMean;
  if (name == "median") return Aggregation::kMedian;
  if (name == "max") return Aggregation::kMax;
  if (name == "min") return Aggregation::kMin;
  if (name == "std") return Aggregation::kStd;
  return std::nullopt;
}

std::string_view aggregation_name(Aggregation agg) {
  switch (agg) {
    case Aggregation::kMean: return "mean";
    case Aggregation::kMedian: return "median";
    case Aggregation::kMax: return "max";
    case Aggregation::kMin: return "min";
    case Aggregation::kStd: return "std";
  }
  return "mean";
}

double aggregate(std::span<const double> values,
                 std::span<const std::size_t> indices, Aggregation agg) {
  if (indices.empty()) return 0.0;
  const double count = static_cast<double>(indices.size());
  switch (agg) {
    case Aggregation::kMean: {
      double sum = 0.0;
      for (std::size_t i : indices) sum += values[i];
      return sum / count;
    }
    case Aggregation::kMedian: {
      std::vector<double> v;
      v.reserve(indices.size());
      for (std::size_t i : indices) v.push_back(values[i]);
      std::sort(v.begin(), v.end());
      const std::size_t mid = v.size() / 2;
      return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
    }
    case Aggregation::kMax: {
      double best = values[indices.front()];
      for (std::size_t i : indices) best = std::max(best, values[i]);
      return best;
    }
    case Aggregation::kMin: {
      double best = values[indices.front()];
      for (std::size_t i : indices) best = std::min(best, values[i]);
      return best;
    }
    case Aggregation::kStd: {
      const double mean = aggregate(values, indices, Aggregation::kMean);
      double ss = 0.0;
      for (std::size_t i : indices) ss += (values[i] - mean) * (values[i] - mean);
      return std::sqrt(ss / count);
    }
  }
  return 0.0;
}

std::vector<double> attribute_values(const FeatureTable& table,
                                     const PredictionVector& preds,
                                     const LabelVector& labels,
                                     std::string_view attribute) {
  for (std::size_t c = 0; c < table.column_names.size(); ++c) {
    if (table.column_names[c] == attribute) return table.values.column(c);
  }
  if (attribute == "pred") return preds.probs;
  if (attribute == "label") {
    return {labels.labels.begin(), labels.labels.end()};
  }
  throw Error(ErrorCode::kUnknownColumn,
              "unknown column '" + std::string(attribute) + "'");
}

std::vector<double> node_aggregate(const MapperGraph& graph,
                                   std::span<const double> values,
                                   Aggregation agg) {
  std::vector<double> out;
  out.reserve(graph.nodes.size());
  for (const auto& node : graph.nodes) {
    out.push_back(aggregate(values, node.members, agg));
  }
  return out;
}

std::vector<double> selection_density(const MapperGraph& graph,
                                      const Selection& selection) {
  std::vector<double> out;
  out.reserve(graph.nodes.size());
  for (const auto& node : graph.nodes) {
    std::size_t hit = 0;
    for (std::size_t m : node.members) {
      hit += std::binary_search(selection.indices.begin(), selection.indices.end(), m);
    }
    out.push_back(node.members.empty()
                      ? 0.0
                      : static_cast<double>(hit) / static_cast<double>(node.members.size()));
  }
  return out;
}

std::vector<double> node_colors(const MapperGraph& graph,
                                std::span<const double> values,
                                Aggregation agg, const Selection* selection) {
  if (selection != nullptr) return selection_density(graph, *selection);
  return node_aggregate(graph, values, agg);
}

// ---------------------------------------------------------------------------

double max_abs_attribution(const AttributionSet& method) {
  double m = 0.0;
  for (double v : method.attributions.data()) m = std::max(m, std::abs(v));
  return m;
}

Matrix observation_levels(const AttributionSet& method) {
  const double m = max_abs_attribution(method);
  Matrix out(method.attributions.rows(), method.attributions.cols(), 0.0);
  if (m == 0.0) return out;
  for (std::size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] = (method.attributions.data()[i] / m) * kImportanceScale;
  }
  return out;
}

ImportanceLevels importance_levels(std::span<const AttributionSet* const> methods,
                                   std::span<const std::size_t> selection) {
  ImportanceLevels out;
  if (methods.empty()) return out;
  const std::size_t d = methods.front()->attributions.cols();
  for (const AttributionSet* method : methods) {
    if (method->attributions.cols() != d) {
      throw Error(ErrorCode::kShapeMismatch, "methods have different feature counts");
    }
    out.methods.push_back(method->method_name);
    const double m = max_abs_attribution(*method);
    std::vector<double> levels(d, 0.0);
    if (m > 0.0 && !selection.empty()) {
      for (std::size_t f = 0; f < d; ++f) {
        double sum = 0.0;
        for (std::size_t i : selection) sum += method->attributions(i, f);
        const double mean = sum / static_cast<double>(selection.size());
        levels[f] = std::clamp((mean / m) * kImportanceScale, -kImportanceScale,
                               kImportanceScale);
      }
    }
    out.levels.push_back(std::move(levels));
  }
  std::vector<double> combined(d, 0.0);
  for (const auto& levels : out.levels) {
    for (std::size_t f = 0; f < d; ++f) combined[f] += std::abs(levels[f]);
  }
  out.order.resize(d);
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) { return combined[a] > combined[b]; });
  return out;
}

ImportanceLevels importance_levels(std::span<const AttributionSet> methods,
                                   std::span<const std::size_t> selection) {
  std::vector<const AttributionSet*> ptrs;
  for (const auto& m : methods) ptrs.push_back(&m);
  return importance_levels(std::span<const AttributionSet* const>(ptrs), selection);
}

// ---------------------------------------------------------------------------

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

std::vector<double> gather(std::span<const double> values,
                           std::span<const std::size_t> selection) {
  std::vector<double> out;
  out.reserve(selection.size());
  for (std::size_t i : selection) out.push_back(values[i]);
  return out;
}

}  // namespace

double silverman_bandwidth(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "KDE needs at least one value");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double h = 0.0;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    h = 0.9 * std::min(sd, iqr / 1.34) * std::pow(n, -0.2);
  }
  if (!(h > 0.0)) h = 1e-3 * std::max(1.0, std::abs(mean));
  return h;
}

double kde_density_at(std::span<const double> values, double bandwidth, double x) {
  const double norm = 1.0 / (static_cast<double>(values.size()) * bandwidth *
                             std::sqrt(2.0 * std::numbers::pi));
  double sum = 0.0;
  for (double v : values) {
    const double z = (x - v) / bandwidth;
    sum += std::exp(-0.5 * z * z);
  }
  return sum * norm;
}

std::vector<double> kde_grid(std::span<const double> values) {
  const double h = silverman_bandwidth(values);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it - 3.0 * h;
  const double hi = *hi_it + 3.0 * h;
  std::vector<double> grid(kKdeGridSize);
  const double step = (hi - lo) / static_cast<double>(kKdeGridSize - 1);
  for (std::size_t i = 0; i < kKdeGridSize; ++i) {
    grid[i] = lo + step * static_cast<double>(i);
  }
  grid.back() = hi;
  return grid;
}

KdeCurve kde(std::span<const double> values, std::span<const std::size_t> selection) {
  const std::vector<double> chosen = gather(values, selection);
  KdeCurve curve;
  curve.grid = kde_grid(values);
  curve.bandwidth = silverman_bandwidth(chosen);
  curve.density.reserve(curve.grid.size());
  for (double x : curve.grid) {
    curve.density.push_back(kde_density_at(chosen, curve.bandwidth, x));
  }
  return curve;
}

KdeCurve kde(std::span<const double> values) {
  std::vector<std::size_t> all(values.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return kde(values, all);
}

double kde_mass(const KdeCurve& curve) {
  double mass = 0.0;
  for (std::size_t i = 1; i < curve.grid.size(); ++i) {
    mass += 0.5 * (curve.density[i] + curve.density[i - 1]) *
            (curve.grid[i] - curve.grid[i - 1]);
  }
  return mass;
}

double distribution_divergence(const KdeCurve& global, const KdeCurve& selection) {
  if (global.grid != selection.grid) {
    throw Error(ErrorCode::kInvalidArgument, "KDE curves must share a grid");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < global.grid.size(); ++i) {
    const double a = std::abs(global.density[i] - selection.density[i]);
    const double b = std::abs(global.density[i - 1] - selection.density[i - 1]);
    total += 0.5 * (a + b) * (global.grid[i] - global.grid[i - 1]);
  }
  return total;
}

// ---------------------------------------------------------------------------

Matrix pca_project(const Matrix& values) {
  const std::size_t n = values.rows();
  const std::size_t d = values.cols();
  if (n < 2 || d < 2) {
    throw Error(ErrorCode::kInvalidArgument, "PCA needs n >= 2 and d >= 2");
  }
  Eigen::MatrixXd x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) x(i, j) = values(i, j);
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  const Eigen::MatrixXd cov = (x.adjoint() * x) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  // Eigenvalues ascend; the last two columns are the top directions.
  Eigen::MatrixXd dirs(d, 2);
  dirs.col(0) = solver.eigenvectors().col(d - 1);
  dirs.col(1) = solver.eigenvectors().col(d - 2);
  for (int c = 0; c < 2; ++c) {
    Eigen::Index arg = 0;
    dirs.col(c).cwiseAbs().maxCoeff(&arg);
    if (dirs(arg, c) < 0) dirs.col(c) *= -1.0;
  }
  const Eigen::MatrixXd proj = x * dirs;
  Matrix out(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, 0) = proj(i, 0);
    out(i, 1) = proj(i, 1);
  }
  return out;
}

Matrix pca_project(const FeatureTable& table) { return pca_project(table.values); }

TableAverages table_averages(const Matrix& values,
                             std::span<const std::size_t> selection) {
  TableAverages out;
  const std::size_t d = values.cols();
  out.global.assign(d, 0.0);
  out.difference.assign(d, 0.0);
  for (std::size_t i = 0; i < values.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) out.global[j] += values(i, j);
  }
  for (double& g : out.global) g /= static_cast<double>(values.rows());
  if (selection.empty()) return out;
  std::vector<double> local(d, 0.0);
  for (std::size_t i : selection) {
    for (std::size_t j = 0; j < d; ++j) local[j] += values(i, j);
  }
  for (std::size_t j = 0; j < d; ++j) {
    local[j] /= static_cast<double>(selection.size());
    out.difference[j] = local[j] - out.global[j];
  }
  out.selection = std::move(local);
  return out;
}

}  // namespace mapperscope
