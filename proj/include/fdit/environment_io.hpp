#pragma once

#include <string>

#include <json.hpp>

#include "fdit/environment.hpp"

namespace fdit {

/// Versioned on-disk environment schema (schema 1).
nlohmann::ordered_json environment_to_json(const Environment& env);
Environment environment_from_json(const nlohmann::json& j);

void save_environment(const Environment& env, const std::string& path);
Environment load_environment(const std::string& path);

}  // namespace fdit
