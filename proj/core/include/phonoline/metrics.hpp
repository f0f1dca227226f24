// Witnesses and figures of merit: g2(0), fidelities, Fock distribution, Wigner function.
#pragma once

#include "phonoline/hilbert.hpp"

namespace phonoline {

// <b†² b²> / <b†b>²; throws NumericalError on (near-)vacuum input where it is undefined.
double g2_zero(const DensityMatrix& rho_b);

// sqrt(<n|rho|n>); the square-root convention is used for every fidelity here.
double fock_fidelity(const DensityMatrix& rho_b, Index n);

// sqrt(<psi|rho|psi>) for a normalized pure target.
double pure_target_fidelity(const DensityMatrix& rho, const Vector& psi);

// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)).
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Diagonal Fock populations.
std::vector<double> fock_distribution(const DensityMatrix& rho_b);

struct WignerGridSpec {
    double re_min = -4.0, re_max = 4.0;
    double im_min = -4.0, im_max = 4.0;
    int re_points = 81, im_points = 81;
};

struct WignerGrid {
    std::vector<double> re_axis, im_axis;
    Eigen::MatrixXd values;  // values(i, j) = W(re_axis[i] + i*im_axis[j])

    double min_value() const { return values.minCoeff(); }
    // Riemann sum; ~1 when the grid captures the state's support.
    double integral() const;
};

// W(alpha) = (2/pi) Tr[D†(alpha) rho D(alpha) Pi], the displaced-parity form
// normalized so the integral over the plane is 1. Evaluated exactly in a padded
// Fock space sized from the grid extent.
WignerGrid wigner(const DensityMatrix& rho_b, const WignerGridSpec& spec = {});

// Single-point evaluation (same convention).
double wigner_at(const DensityMatrix& rho_b, Complex alpha);

}  // namespace phonoline
