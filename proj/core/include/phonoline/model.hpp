// Rotating-frame Hamiltonian, dissipator list, and initial states from
// physical parameters in units of the phonon frequency (omega_m = 1).
#pragma once

#include "phonoline/hilbert.hpp"

namespace phonoline {

// All quantities normalized by omega_m. Lists hold one entry per spin.
struct SystemParams {
    int n_spins = 1;
    Index d = 15;                       // phonon truncation
    std::vector<double> delta;          // spin-laser detunings
    std::vector<double> g;              // spin-phonon couplings
    std::vector<double> omega_drive;    // laser drive amplitudes
    double gamma_b = 0.0;               // phonon decay
    double gamma_s = 0.0;               // spin decay
    double gamma_phi = 0.0;             // spin pure dephasing
    double nbar_b = 0.0;                // phonon bath occupation
    double nbar_s = 0.0;                // spin bath occupation

    Layout layout() const;              // [2 x n_spins, d]
    void validate() const;              // throws ConfigError
};

// Full prefactor (e.g. (gamma_b/2)(1+nbar_b)) and the full-layout jump operator.
struct Dissipator {
    double rate;
    Operator jump;
};

// H' = b†b + sum_j [ (delta_j/2) sigma_z_j + g_j sigma_z_j (b + b†)
//                    + omega_j (sigma_plus_j + sigma_minus_j) ].
Operator build_hamiltonian(const SystemParams& p);

// Order: phonon down, phonon up, then per spin: decay, pump, dephasing.
// Zero-rate entries are omitted.
std::vector<Dissipator> build_dissipators(const SystemParams& p);

// Bose-Einstein occupation 1/(exp(omega/kT) - 1); 0 at kT = 0.
double bose_einstein(double omega, double kT);

// Diagonal geometric Fock distribution p_n = nbar^n/(1+nbar)^(n+1), renormalized
// after truncation; rejects truncations whose discarded tail exceeds 1e-9.
DensityMatrix thermal_state(Index d, double nbar);

// Projector onto alpha|g> + beta|e> in the (|e>, |g>) basis, i.e. (beta, alpha)^T.
DensityMatrix spin_superposition(Complex alpha, Complex beta);

// rho_s1 x ... x rho_sN x rho_b on the standard layout.
DensityMatrix joint_initial_state(const std::vector<DensityMatrix>& spin_states,
                                  const DensityMatrix& phonon);

}  // namespace phonoline
