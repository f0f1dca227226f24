#include "phonoline/scenarios.hpp"

#include <algorithm>

namespace phonoline {

namespace detail {
extern const ScenarioEntry kScenarioTable[];
extern const std::size_t kScenarioTableSize;
}  // namespace detail

const std::vector<ScenarioEntry>& scenario_registry() {
    static const std::vector<ScenarioEntry> table(detail::kScenarioTable,
                                                  detail::kScenarioTable +
                                                      detail::kScenarioTableSize);
    return table;
}

bool has_scenario(const std::string& name) {
    for (const ScenarioEntry& e : scenario_registry())
        if (name == e.name) return true;
    return false;
}

namespace {

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

ScenarioConfig load_scenario(const std::string& name) {
    for (const ScenarioEntry& e : scenario_registry())
        if (name == e.name) return parse_config_text(e.yaml, std::string("scenario ") + e.name);
    std::string nearest;
    std::size_t best = std::string::npos;
    for (const ScenarioEntry& e : scenario_registry()) {
        const std::size_t d = edit_distance(name, e.name);
        if (d < best) {
            best = d;
            nearest = e.name;
        }
    }
    throw ConfigError("unknown scenario '" + name + "'; did you mean '" + nearest + "'?");
}

std::string scenario_listing() {
    std::string out;
    for (const ScenarioEntry& e : scenario_registry()) {
        const ScenarioConfig cfg = parse_config_text(e.yaml, std::string("scenario ") + e.name);
        const char* kind = cfg.kind == RunKind::sweep        ? "sweep"
                           : cfg.kind == RunKind::ibm_compare ? "ibm-compare"
                                                               : "timeseries";
        out += e.name;
        out += "  (";
        out += kind;
        out += ")\n";
    }
    out += "extract-coupling  (subcommand: project force files onto phonon modes)\n";
    return out;
}

}  // namespace phonoline
