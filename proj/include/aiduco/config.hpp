#pragma once

#include <filesystem>
#include <string>

#include "aiduco/scenario.hpp"

namespace aiduco {

/// Reads a YAML mapping of ScenarioConfig fields (schema in docs/config.md).
/// Unset fields keep the preset values of the file's `class`. Unknown keys,
/// a wrong schema_version or invalid values throw std::invalid_argument.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// YAML text that parse_config reads back to the same configuration.
std::string dump_config(const ScenarioConfig& cfg);

}  // namespace aiduco
