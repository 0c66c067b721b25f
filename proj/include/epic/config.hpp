#pragma once

#include <stdexcept>
#include <string>

#include "epic/engine.hpp"

namespace epic {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses the flat dotted-key text format (`channel.f_c_hz = 6.0e9`, `#`
/// comments). Unknown keys are hard errors; missing keys keep the defaults.
/// Throws ConfigError with a line number on parse failures and
/// std::invalid_argument naming the invariant on validation failures.
ScenarioConfig parse_config_text(const std::string& text);

/// Loads and validates a configuration file.
ScenarioConfig load_config(const std::string& path);

/// Applies one `key = value` override on top of an existing config.
void apply_config_entry(ScenarioConfig& config, const std::string& key,
                        const std::string& value);

/// Serializes every key in canonical order; the result reparses to the same
/// config (this is the manifest payload).
std::string serialize_config(const ScenarioConfig& config);

}  // namespace epic
