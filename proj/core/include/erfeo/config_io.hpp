#pragma once

#include <string>
#include <string_view>

#include "erfeo/spin_model.hpp"

namespace erfeo {

// Sections [fe], [er], [exchange], [environment]; keys named after the struct fields.
// Missing keys keep their default values, unknown keys raise ConfigError.
ModelConfig parse_config(std::string_view toml_text, ModelConfig base = default_config());
ModelConfig load_config(const std::string& path);

// "environment.T=10", "environment.B_ext=[0,0,1]" or "environment.B_ext.z=1"
void apply_override(ModelConfig& cfg, std::string_view assignment);

std::string to_toml(const ModelConfig& cfg);

}  // namespace erfeo
