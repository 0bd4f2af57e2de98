#pragma once

#include "pawspec/spectrum.hpp"
#include "pawspec/wreath.hpp"

#include <json.hpp>

namespace pawspec {

/// {"d":2,"n":2,"top":"1>2;2>1","children":{"1":{...},"2":{...}}}
/// Level 0 is {"d":2,"n":0}.
nlohmann::json to_json(const TreePA& y);
/// Throws std::invalid_argument on malformed input.
TreePA tree_from_json(const nlohmann::json& j);

/// {"dim":4,"zero_mult":2,"cycles":[1,1]}
nlohmann::json to_json(const SpectralSummary& s);

} // namespace pawspec
