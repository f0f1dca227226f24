// Master-equation time integration: adaptive RK45 for transients, L-stable
// TR-BDF2 for long horizons, with per-sample state validation.
#pragma once

#include <functional>

#include "phonoline/liouvillian.hpp"

namespace phonoline {

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

struct EvolveOptions {
    // Tight enough that integration noise stays well below the validation
    // floors (eigenvalues >= -1e-8, Hermiticity 1e-9) over long horizons.
    double rtol = 1e-10;
    double atol = 1e-12;

    enum class Method { automatic, rk45, trbdf2 };
    Method method = Method::automatic;
    // automatic integrates explicitly up to here, implicitly beyond (the explicit
    // step size is stability-limited, not accuracy-limited, at long horizons).
    double stiff_threshold = 500.0;

    bool validate = true;
    double trace_tol = 1e-8;
    double herm_tol = 1e-9;
    double eig_tol = 1e-8;
    // Abort when the top-two Fock populations reach this weight (0 disables).
    double truncation_guard = 1e-6;
};

using SampleCallback = std::function<void(double, const DensityMatrix&)>;

// Integrates rho' = L rho, invoking on_sample at every requested time.
// times must start at 0 and increase strictly.
void evolve_observed(const DensityMatrix& rho0, const Liouvillian& L,
                     const std::vector<double>& times, const SampleCallback& on_sample,
                     const EvolveOptions& opts = {});

// Same, collecting the sampled states.
Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& L,
                  const std::vector<double>& times, const EvolveOptions& opts = {});

}  // namespace phonoline
