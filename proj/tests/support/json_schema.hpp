#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace testsupport {

// Minimal JSON-schema checker covering the subset the shipped schemas use:
// type, properties, required, items, enum, additionalProperties (boolean),
// minimum/maximum. Returns human-readable violations; empty means valid.
std::vector<std::string> schema_violations(const nlohmann::json& schema,
                                           const nlohmann::json& doc,
                                           const std::string& where = "$");

nlohmann::json load_json_file(const std::string& path);

}  // namespace testsupport
