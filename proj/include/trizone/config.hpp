#pragma once

#include <string>

#include "trizone/model.hpp"

namespace trizone {

inline constexpr int kSchemaVersion = 1;

struct SystemConfig {
  std::string name;
  ThreeZoneSystem system;
};

/// Parses the JSON configuration; ConfigError names the offending line or field.
SystemConfig parse_config(const std::string& text);
SystemConfig load_config(const std::string& path);
std::string config_to_json(const SystemConfig& cfg);

}  // namespace trizone
