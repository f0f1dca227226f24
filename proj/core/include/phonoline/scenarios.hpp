// Built-in scenario registry; configs are embedded at build time.
#pragma once

#include <string>
#include <vector>

#include "phonoline/config.hpp"

namespace phonoline {

struct ScenarioEntry {
    const char* name;
    const char* yaml;
};

const std::vector<ScenarioEntry>& scenario_registry();
bool has_scenario(const std::string& name);

// Parses the embedded config; unknown names throw ConfigError naming the
// closest registered scenario.
ScenarioConfig load_scenario(const std::string& name);

std::string scenario_listing();

}  // namespace phonoline
