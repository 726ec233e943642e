#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mapperscope/types.h"

namespace mapperscope {

inline constexpr int kDefaultSubsamples = 100;
inline constexpr int kDefaultBootstrap = 20;
inline constexpr int kDefaultGridLow = 5;
inline constexpr int kDefaultGridHigh = 40;

// Hausdorff distance between the cloud and a resample of it, given as row
// indices (repeats allowed). Since the resample is a subset of the cloud this
// is max over rows x of the distance from x to its nearest resampled row.
double hausdorff_to_resample(const Matrix& points,
                             std::span<const std::size_t> resample);

struct DeltaEstimate {
  double delta = 0.0;
  // Every point coincides; the clustering threshold collapses to zero.
  bool degenerate = false;
  std::vector<double> distances;  // one per resample
};

// Mean Hausdorff distance between the cloud and `subsamples` bootstrap
// resamples of size n. Resample k uses derive_seed(seed, "delta", k).
// Throws Error(kInvalidArgument) when n < 2 or subsamples < 1.
DeltaEstimate estimate_delta(const Matrix& points,
                             int subsamples = kDefaultSubsamples,
                             std::uint64_t seed = 0);

// Mean over `bootstrap` resamples of the bottleneck distance between the
// Mapper diagram on the full cloud and on the resample. Resample b uses
// derive_seed(params.seed, "bootstrap", b).
double stability_score(const Matrix& points, std::span<const double> lens,
                       const CoverParams& params,
                       int bootstrap = kDefaultBootstrap);

std::vector<int> resolution_grid(int low, int high);

// Index of the smallest score; ties go to the smaller resolution.
std::size_t argmin_resolution(std::span<const int> grid,
                              std::span<const double> scores);

// Scores every grid resolution with shared gain/delta and picks the most
// stable (minimal mean bottleneck distance).
StabilityReport select_resolution(const Matrix& points,
                                  std::span<const double> lens,
                                  std::span<const int> grid, double gain,
                                  double delta,
                                  int bootstrap = kDefaultBootstrap,
                                  std::uint64_t seed = 0);

}  // namespace mapperscope
