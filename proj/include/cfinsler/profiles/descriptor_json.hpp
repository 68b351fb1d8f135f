#pragma once

// JSON form of profile descriptors (schema: docs/profile.schema.json).

#include <string>

#include <json.hpp>

#include "cfinsler/profiles/profile.hpp"

namespace cfinsler {

nlohmann::json to_json(const ScalarFunction1D& f);
nlohmann::json to_json(const ProfileDescriptor& d);

/// Throws ConfigError naming the offending field (e.g. "profile.f.kind").
ScalarFunction1D scalar_function_from_json(const nlohmann::json& j, const std::string& path = "f");
ProfileDescriptor descriptor_from_json(const nlohmann::json& j, const std::string& path = "profile");

std::string to_string(ProfileFamily family);

}  // namespace cfinsler
