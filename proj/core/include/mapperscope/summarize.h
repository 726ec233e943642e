#pragma once

#include <span>

#include "mapperscope/types.h"

namespace mapperscope {

inline constexpr double kDefaultSimilarityThreshold = 0.9;

// |A ∩ B| / |A ∪ B| for sorted index sets; 1 when both are empty.
double jaccard_similarity(std::span<const std::size_t> a,
                          std::span<const std::size_t> b);

// Merges nodes whose member sets are linked by a chain of Jaccard
// similarities >= `similarity_threshold` (single linkage on Jaccard distance,
// cut at 1 - threshold). Merged nodes take the union of members, the smallest
// constituent interval index and the mean lens of the union; edges are
// rebuilt from member intersections. Output nodes are ordered by (interval
// index, members), so a graph without merges comes back unchanged.
//
// With `fixpoint` set the cut is repeated until no pair reaches the
// threshold. Throws Error(kInvalidArgument) unless 0 < threshold <= 1.
MapperGraph summarize_graph(const MapperGraph& graph,
                            std::span<const double> lens,
                            double similarity_threshold = kDefaultSimilarityThreshold,
                            bool fixpoint = false);

}  // namespace mapperscope
