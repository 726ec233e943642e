#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mapperscope/types.h"

namespace mapperscope {

// Graph with a height per node; the filtration is the sublevel-set
// filtration of the piecewise-linear extension (edges enter at the max of
// their endpoint heights).
struct FilteredGraph {
  std::vector<double> heights;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Node heights are the mean lens value over each node's members.
FilteredGraph node_filtration(const MapperGraph& graph,
                              std::span<const double> lens);

// Extended persistence of the height function on the 1-complex, by cone
// construction and Z/2 column reduction. Points use these conventions:
//   Ord0  (birth, death)      merge of a younger component, birth < death
//   Ext0  (min, max)          one per connected component
//   Ext1  (upper, lower)      one per independent cycle, birth >= death
//   Rel1  (birth, death)      from the descending pass, birth > death
// Zero-persistence points are dropped.
PersistenceDiagram extended_persistence(const FilteredGraph& graph);

// Convenience: node_filtration followed by extended_persistence.
PersistenceDiagram mapper_diagram(const MapperGraph& graph,
                                  std::span<const double> lens);

// Bottleneck distance between two multisets of (low, high) points, high >=
// low. Unmatched points pay (high - low) / 2 to reach the diagonal.
double bottleneck_points(std::span<const std::pair<double, double>> a,
                         std::span<const std::pair<double, double>> b);

// Bottleneck distance computed per homology dimension (subtypes pooled,
// points normalised to (min, max)); the result is the max over dimensions.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

// Pairwise bottleneck distances; symmetric with a zero diagonal.
Matrix distance_matrix(std::span<const PersistenceDiagram> diagrams);

}  // namespace mapperscope
