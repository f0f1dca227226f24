// Closed-form references for the collective-dephasing channel acting on
// Bell-diagonal two-qubit states.
#pragma once

#include <array>

#include "phonoline/hilbert.hpp"

namespace phonoline {

// Bell-diagonal state 1/4 (I + sum_i c_i sigma_i x sigma_i).
struct BellDiagonalSpec {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    // Weights of {Phi+, Phi-, Psi+, Psi-} in that order.
    std::array<double, 4> bell_weights() const;
    // All four weights must be nonnegative (to -1e-12).
    void validate() const;
};

DensityMatrix bd_state(const BellDiagonalSpec& spec);

// Thermal expectation of the conditional displacement accumulated between the
// branches that differ by the maximal spin-weight gap. Evaluated numerically
// as Tr[D(4 g0 (1-e^{-it})) rho_th] with a truncated matrix exponential; the
// result at dimension d must agree with d+5 to 1e-8 and be real to 1e-10.
double coherence_factor(double t, double g0, double nbar, Index d = 30);

// Truncation that converges the coherence factor for displacements up to 8 g0.
Index coherence_truncation(double g0);

// X-form state after collective dephasing for time t: outer coherences are
// damped by the coherence factor, inner coherences and populations persist.
DensityMatrix bd_evolution(const BellDiagonalSpec& spec, double t, double g0, double nbar);

}  // namespace phonoline
