#pragma once

#include <string>

#include <json.hpp>

#include "opspec/region.hpp"

namespace opspec {

// Schema: {"primitives":[{"type":"disk","center":[re,im],"radius":r}, ...]}
// Throws RegionParseError with the offending primitive index.
RegionSpec parse_region(const nlohmann::json& j);
RegionSpec parse_region_file(const std::string& path);

nlohmann::json region_to_json(const RegionSpec& spec);

}  // namespace opspec
