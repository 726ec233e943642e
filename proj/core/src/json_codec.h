#pragma once

#include <json.hpp>

#include "mapperscope/types.h"

namespace mapperscope {

using nlohmann::json;

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json cover_params_to_json(const CoverParams& p);
CoverParams cover_params_from_json(const json& j);

// members are omitted when `with_members` is false.
json graph_to_json(const MapperGraph& g, bool with_members = true);
MapperGraph graph_from_json(const json& j);

json diagram_to_json(const PersistenceDiagram& d);
PersistenceDiagram diagram_from_json(const json& j);

json stability_to_json(const StabilityReport& r);
StabilityReport stability_from_json(const json& j);

json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const json& j);

}  // namespace mapperscope
