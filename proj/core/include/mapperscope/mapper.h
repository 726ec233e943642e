#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mapperscope/types.h"

namespace mapperscope {

struct Interval {
  double start = 0.0;
  double end = 0.0;
  bool operator==(const Interval&) const = default;
};

struct IntervalCover {
  std::vector<Interval> intervals;  // sorted by start
  bool operator==(const IntervalCover&) const = default;
};

// Uniform cover of [min(lens), max(lens)] by `resolution` closed intervals of
// length L = R / (resolution - (resolution - 1) * gain), consecutive ones
// overlapping by L * gain. The last interval ends exactly at max(lens); a zero
// range gives one degenerate interval.
//
// Throws Error(kEmptyLens) for an empty lens and Error(kInvalidArgument) for
// resolution < 1 or gain outside (0, 1).
IntervalCover build_cover(std::span<const double> lens, int resolution,
                          double gain);

// Per-interval observation indices (ascending). Intervals are closed, so a
// value on a boundary lands in every interval containing it. Empty bins are
// kept as empty vectors.
std::vector<std::vector<std::size_t>> assign_bins(std::span<const double> lens,
                                                  const IntervalCover& cover);

// Single-linkage agglomerative clustering of `rows` (indices into `points`)
// cut at distance `delta`: two rows share a cluster iff a chain of Euclidean
// hops each <= delta joins them. Clusters hold the original indices sorted
// ascending, and are ordered by their smallest index.
std::vector<std::vector<std::size_t>> cluster_bin(
    const Matrix& points, std::span<const std::size_t> rows, double delta);

// Edges of the nerve: one per node pair with a non-empty member
// intersection. `observation_count` bounds the member indices.
std::vector<MapperEdge> nerve_edges(std::span<const MapperNode> nodes,
                                    std::size_t observation_count);

// Builds the Mapper graph of `points` (n x k) under the scalar `lens`. Node ids
// follow (interval index, smallest member) order.
MapperGraph build_mapper(const Matrix& points, std::span<const double> lens,
                         const CoverParams& params,
                         std::string method_name = {});

MapperGraph build_mapper(const AttributionSet& attributions,
                         std::span<const double> lens,
                         const CoverParams& params);

// Mean of lens over `members`.
double mean_lens(std::span<const double> lens,
                 std::span<const std::size_t> members);

std::size_t connected_components(const MapperGraph& graph);

// First Betti number |E| - |V| + components.
std::size_t cycle_rank(const MapperGraph& graph);

}  // namespace mapperscope
