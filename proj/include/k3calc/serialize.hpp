#pragma once

#include <string>

#include <json.hpp>

#include "k3calc/config.hpp"

namespace k3calc {

/// Curves, points and edges are written sorted by id so that two runs on
/// equal input produce identical bytes.
nlohmann::json to_json(const Config& config);
Config config_from_json(const nlohmann::json& doc);

std::string to_dot(const Config& config);

/// format is "json" or "dot"; anything else throws Error(invalid_argument).
std::string emit(const Config& config, const std::string& format);

}  // namespace k3calc
