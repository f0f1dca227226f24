// Scenario execution: time series, sweeps, circuit comparison; CSV emission.
#pragma once

#include <optional>

#include "phonoline/config.hpp"

namespace phonoline {

struct RunOptions {
    std::string out_dir = ".";
    std::optional<Index> samples_override;      // grid point count
    std::optional<Index> truncation_override;   // phonon dimension
    std::optional<Index> sweep_points_override; // points per sweep axis
    int threads = 1;                            // sweep cells in flight
};

// Dispatches on cfg.kind; returns the paths written.
std::vector<std::string> run_scenario(const ScenarioConfig& cfg, const RunOptions& opt = {});

// Two-axis sweep (cfg.kind must be sweep). Cell failures become NaN and are
// counted; the count is reported on stderr and does not fail the run.
std::vector<std::string> run_sweep(const ScenarioConfig& cfg, const RunOptions& opt = {});

// The initial density matrix a config describes, on the params' layout.
DensityMatrix initial_state(const ScenarioConfig& cfg, const SystemParams& params);

}  // namespace phonoline
