#include "mapperscope/param_select.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mapperscope/error.h"
#include "mapperscope/mapper.h"
#include "mapperscope/random.h"
#include "mapperscope/topology.h"

namespace mapperscope {
namespace {

// Nearest neighbours of every row, ascending by distance, self excluded.
// Most rows of a bootstrap resample find a resampled neighbour within the
// first few entries; the rest fall back to a full scan.
class NeighborLists {
 public:
  NeighborLists(const Matrix& points, std::size_t per_row)
      : per_row_(std::min(per_row, points.rows() - 1)),
        index_(points.rows() * per_row_),
        squared_(points.rows() * per_row_) {
    const std::size_t n = points.rows();
    std::vector<std::pair<double, std::size_t>> row(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t w = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) row[w++] = {squared_distance(points.row(i), points.row(j)), j};
      }
      std::partial_sort(row.begin(), row.begin() + per_row_, row.end());
      for (std::size_t t = 0; t < per_row_; ++t) {
        squared_[i * per_row_ + t] = row[t].first;
        index_[i * per_row_ + t] = row[t].second;
      }
    }
  }

  std::size_t per_row() const { return per_row_; }
  std::size_t index(std::size_t i, std::size_t t) const { return index_[i * per_row_ + t]; }
  double squared(std::size_t i, std::size_t t) const { return squared_[i * per_row_ + t]; }

 private:
  std::size_t per_row_;
  std::vector<std::size_t> index_;
  std::vector<double> squared_;
};

double hausdorff_with_lists(const Matrix& points, const NeighborLists& lists,
                            std::span<const std::size_t> resample,
                            std::vector<char>& present,
                            std::vector<std::size_t>& support) {
  const std::size_t n = points.rows();
  present.assign(n, 0);
  support.clear();
  for (std::size_t r : resample) {
    if (!present[r]) {
      present[r] = 1;
      support.push_back(r);
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (present[i]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < lists.per_row(); ++t) {
      if (present[lists.index(i, t)]) {
        best = lists.squared(i, t);
        break;
      }
    }
    if (!std::isfinite(best)) {
      for (std::size_t s : support) {
        best = std::min(best, squared_distance(points.row(i), points.row(s)));
      }
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

struct Resample {
  Matrix points;
  std::vector<double> lens;
};

std::vector<Resample> draw_resamples(const Matrix& points,
                                     std::span<const double> lens,
                                     int bootstrap, std::uint64_t seed) {
  std::vector<Resample> out;
  out.reserve(bootstrap);
  for (int b = 0; b < bootstrap; ++b) {
    const auto idx = bootstrap_indices(
        points.rows(), derive_seed(seed, "bootstrap", static_cast<std::uint64_t>(b)));
    Resample r;
    r.points = points.select_rows(idx);
    r.lens.reserve(idx.size());
    for (std::size_t i : idx) r.lens.push_back(lens[i]);
    out.push_back(std::move(r));
  }
  return out;
}

double score_with_resamples(const Matrix& points, std::span<const double> lens,
                            const CoverParams& params,
                            std::span<const Resample> resamples) {
  const PersistenceDiagram reference =
      mapper_diagram(build_mapper(points, lens, params), lens);
  double sum = 0.0;
  for (const auto& r : resamples) {
    const PersistenceDiagram d =
        mapper_diagram(build_mapper(r.points, r.lens, params), r.lens);
    sum += bottleneck(reference, d);
  }
  return resamples.empty() ? 0.0 : sum / static_cast<double>(resamples.size());
}

void check_lens(const Matrix& points, std::span<const double> lens) {
  if (lens.empty()) throw Error(ErrorCode::kEmptyLens, "lens is empty");
  if (points.rows() != lens.size()) {
    throw Error(ErrorCode::kShapeMismatch, "attribution rows differ from lens length");
  }
}

}  // namespace

double hausdorff_to_resample(const Matrix& points,
                             std::span<const std::size_t> resample) {
  if (resample.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "resample is empty");
  }
  std::vector<char> present(points.rows(), 0);
  for (std::size_t r : resample) {
    if (r >= points.rows()) {
      throw Error(ErrorCode::kInvalidArgument, "resample index out of range");
    }
    present[r] = 1;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    if (present[i]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s : resample) {
      best = std::min(best, squared_distance(points.row(i), points.row(s)));
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

DeltaEstimate estimate_delta(const Matrix& points, int subsamples,
                             std::uint64_t seed) {
  const std::size_t n = points.rows();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 points");
  if (subsamples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "subsample count must be >= 1");
  }
  DeltaEstimate est;
  const NeighborLists lists(points, 32);
  std::vector<char> present;
  std::vector<std::size_t> support;
  est.distances.reserve(subsamples);
  for (int k = 0; k < subsamples; ++k) {
    const auto idx = bootstrap_indices(
        n, derive_seed(seed, "delta", static_cast<std::uint64_t>(k)));
    est.distances.push_back(
        hausdorff_with_lists(points, lists, idx, present, support));
  }
  est.delta = std::accumulate(est.distances.begin(), est.distances.end(), 0.0) /
              static_cast<double>(subsamples);

  bool all_same = true;
  for (std::size_t i = 1; i < n && all_same; ++i) {
    all_same = std::equal(points.row(i).begin(), points.row(i).end(),
                          points.row(0).begin());
  }
  est.degenerate = all_same;
  return est;
}

double stability_score(const Matrix& points, std::span<const double> lens,
                       const CoverParams& params, int bootstrap) {
  check_lens(points, lens);
  check_cover_params(params);
  if (bootstrap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bootstrap count must be >= 1");
  }
  const auto resamples = draw_resamples(points, lens, bootstrap, params.seed);
  return score_with_resamples(points, lens, params, resamples);
}

std::vector<int> resolution_grid(int low, int high) {
  if (low < 1 || high < low) {
    throw Error(ErrorCode::kInvalidArgument, "resolution grid must satisfy 1 <= low <= high");
  }
  std::vector<int> grid(static_cast<std::size_t>(high - low + 1));
  std::iota(grid.begin(), grid.end(), low);
  return grid;
}

std::size_t argmin_resolution(std::span<const int> grid,
                              std::span<const double> scores) {
  if (grid.empty() || grid.size() != scores.size()) {
    throw Error(ErrorCode::kInvalidArgument, "grid and scores must be non-empty and aligned");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (scores[i] < scores[best] ||
        (scores[i] == scores[best] && grid[i] < grid[best])) {
      best = i;
    }
  }
  return best;
}

StabilityReport select_resolution(const Matrix& points,
                                  std::span<const double> lens,
                                  std::span<const int> grid, double gain,
                                  double delta, int bootstrap,
                                  std::uint64_t seed) {
  check_lens(points, lens);
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "resolution grid is empty");
  if (bootstrap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bootstrap count must be >= 1");
  }
  for (int r : grid) check_cover_params({r, gain, delta, seed});

  // Every resolution sees the same resamples.
  const auto resamples = draw_resamples(points, lens, bootstrap, seed);

  StabilityReport report;
  report.grid.assign(grid.begin(), grid.end());
  report.gain = gain;
  report.delta = delta;
  report.seed = seed;
  report.bootstrap_count = bootstrap;
  report.scores.reserve(grid.size());
  for (int r : grid) {
    report.scores.push_back(
        score_with_resamples(points, lens, {r, gain, delta, seed}, resamples));
  }
  report.chosen = report.grid[argmin_resolution(report.grid, report.scores)];
  return report;
}

}  // namespace mapperscope
