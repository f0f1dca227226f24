// Steady-state solve: the kernel element of the Liouvillian with unit trace.
#pragma once

#include "phonoline/liouvillian.hpp"

namespace phonoline {

struct SteadyOptions {
    double residual_tol = 1e-9;  // on ||L vec(rho)||_inf
    double eig_tol = 1e-8;       // positivity tolerance
    // Two-start inverse-iteration probe for kernel degeneracy; disable in sweeps
    // where physical uniqueness is guaranteed and the residual check still guards.
    bool check_uniqueness = true;
};

// Solves L vec(rho) = 0 with Tr rho = 1 by replacing one diagonal-element row with
// the trace constraint and factoring the sparse system, then Hermitizes, normalizes,
// and validates residual, positivity, and (optionally) kernel uniqueness.
DensityMatrix steady_state(const Liouvillian& L, const SteadyOptions& opts = {});

}  // namespace phonoline
