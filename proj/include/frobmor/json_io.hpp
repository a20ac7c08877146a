#pragma once

#include "frobmor/stable.hpp"

#include <json.hpp>

namespace frobmor {

using nlohmann::json;

// Exact integer serialization; parsing re-validates every invariant through
// the constructors (nilpotency, linearity, monicity of chain maps).
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, u32 p);

json to_json(const LambdaModule& m);
LambdaModule module_from_json(const json& j, u32 p);

json to_json(const ModuleMap& f);
ModuleMap module_map_from_json(const json& j, u32 p);

json to_json(const ChainObject& x); // {"l":..., "terms":[...], "maps":[matrix...]}
ChainObject chain_from_json(const json& j, u32 p);

json to_json(const ChainMap& f); // {"src":..., "tgt":..., "comps":[matrix...]}
ChainMap chain_map_from_json(const json& j, u32 p);

// report artifact for triangles: objects, maps, witness kind, memberships
json to_json(const TriangleCertificate& t);

} // namespace frobmor
