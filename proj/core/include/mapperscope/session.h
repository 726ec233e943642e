#pragma once

#include <string>
#include <vector>

#include "mapperscope/types.h"

namespace mapperscope {

// Every invariant violation across the bundle, one description each. Empty
// iff the session is internally consistent. Never throws on bad data.
std::vector<std::string> validate_session(const Session& session);

// Edge/member invariants of one graph over n observations: edge iff member
// intersection is non-empty, shared counts exact, no self or duplicate edges,
// members sorted/unique/in range, lens values within members' lens range.
std::vector<std::string> validate_graph(const MapperGraph& graph,
                                        const PredictionVector& lens);

}  // namespace mapperscope
