// Scenario configuration: schema, parsing, validation.
//
// Configs are YAML. Unknown keys anywhere are errors; the full schema is
// documented in the README. A config describes either a time-series run, a
// two-axis parameter sweep, or the staged-circuit comparison run.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phonoline/analytic.hpp"
#include "phonoline/metrics.hpp"
#include "phonoline/model.hpp"

namespace phonoline {

enum class RunKind { timeseries, sweep, ibm_compare };

enum class ObservableKind {
    fock_fidelity,     // fock_fidelity:n
    qubit_fidelity,    // target (|0>+|1>)/sqrt(2) on the phonon
    g2,
    fock_distribution,
    wigner,            // side CSV at the configured time
    concurrence,
    discord,
    purity,
    populations,
};

struct ObservableSpec {
    ObservableKind kind;
    Index fock_n = 0;  // for fock_fidelity
    std::string token;
};

// alpha |g> + beta |e> per emitter; beta defaults to sqrt(1 - alpha^2).
struct SpinInit {
    double alpha = 1.0;
    double beta = 0.0;
};

struct InitialState {
    bool ground = false;
    std::vector<SpinInit> spins;
    std::optional<BellDiagonalSpec> bell_diagonal;
    // Phonon: thermal by default with nbar = params.nbar_b, or a Fock state.
    bool phonon_fock = false;
    Index fock_n = 0;
    std::optional<double> thermal_nbar;
};

struct TimeGrid {
    double t_max = 0.0;
    std::optional<double> samples_per_unit;
    std::optional<Index> samples;  // total points including t = 0
    bool log_scale = false;
    double log_t_min = 1.0;
    Index log_points = 200;

    std::vector<double> times() const;
};

struct SweepAxis {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    Index points = 41;
    bool log_scale = false;

    std::vector<double> values() const;
};

struct SweepSpec {
    bool steady = true;  // otherwise final-time
    ObservableSpec observable;
    double t_final = 0.0;
    SweepAxis x;
    SweepAxis y;
};

struct WignerOutputSpec {
    double at = 0.0;
    WignerGridSpec grid;
};

struct ScenarioConfig {
    std::string name;
    RunKind kind = RunKind::timeseries;
    SystemParams params;
    InitialState initial;
    TimeGrid time;
    std::vector<ObservableSpec> observables;
    std::optional<WignerOutputSpec> wigner;
    std::optional<SweepSpec> sweep;
    std::string output;  // CSV base name; defaults to "<name>.csv"

    void validate() const;
};

ObservableSpec parse_observable(const std::string& token);

ScenarioConfig parse_config_text(const std::string& yaml_text, const std::string& origin);
ScenarioConfig load_config_file(const std::string& path);

// The sweep axes mutate a copy of the base parameters by name.
void apply_sweep_param(SystemParams& params, const std::string& name, double value);

}  // namespace phonoline
