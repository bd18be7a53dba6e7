#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bimasim/scenario.hpp"
#include "bimasim/vendor_json_fwd.hpp"

// JSON scenario files. Parsing collects field-level diagnostics instead of
// stopping at the first problem; a config with any issue is rejected.

namespace bimasim {

struct ConfigIssue {
    std::string field;
    std::string message;
};

struct ConfigParse {
    std::optional<ScenarioConfig> config;
    std::vector<ConfigIssue> issues;
    bool ok() const { return config.has_value() && issues.empty(); }
};

ConfigParse parse_scenario(const nlohmann::json& j);
ConfigParse load_scenario_file(const std::string& path);

/// Canonical serialization used for provenance hashing.
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);
std::string config_hash_hex(const ScenarioConfig& cfg);

std::uint64_t fnv1a64(std::string_view text);

std::string to_string(Scheme s);
std::string to_string(Metric m);
std::string to_string(Ordering o);

}  // namespace bimasim
