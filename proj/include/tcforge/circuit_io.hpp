#pragma once

#include <string>

#include <json.hpp>

#include "tcforge/dynamics.hpp"

namespace tcforge {

nlohmann::json circuit_to_json(const Circuit& c);
// Throws UsageError on malformed input.
Circuit circuit_from_json(const nlohmann::json& j);

std::string dump_circuit(const Circuit& c);
Circuit parse_circuit(const std::string& text);

} // namespace tcforge
