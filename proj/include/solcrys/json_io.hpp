#pragma once

// JSON (de)serialization for specs, elements, automorphisms, verdicts and
// oracle reports. Output is canonical: keys are emitted in sorted order and
// nothing time- or machine-dependent is written.

#include "solcrys/oracle.hpp"

#include <json.hpp>

namespace solcrys {

using json = nlohmann::json;

json to_json(const Vec2& v);
json to_json(const Mat2& m);  // row-major 4-element array
Vec2 vec2_from_json(const json& j);
Mat2 mat2_from_json(const json& j);

json to_json(const GroupElement& g, const GroupSpec& spec);
GroupElement element_from_json(const json& j, const GroupSpec& spec);

// {"family": ..., "A": [...], "N": [...]?, "M": [...]?,
//  "params": {"k": [..], ...}, "eta": int?}
json to_json(const GroupSpec& spec);
GroupSpec spec_from_json(const json& j);  // parsed, not yet validated

json to_json(const AutomorphismSpec& aut, const GroupSpec& spec);
std::map<std::string, GroupElement> images_from_json(const json& j,
                                                     const GroupSpec& spec);

json to_json(const ReidemeisterVerdict& v, const GroupSpec& spec);
json to_json(const WindowReport& w);
json quotient_to_json(const AbelianQuotient& q);

}  // namespace solcrys
