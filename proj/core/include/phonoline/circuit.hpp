// Gate-level realization of the state-preparation and noise channels.
//
// Computational conventions: qubit basis order is (|e>, |g>) as everywhere
// else, with |0> = |e>. In a multi-qubit register the FIRST listed target is
// the MOST significant bit of the gate's index space.
#pragma once

#include <vector>

#include "phonoline/analytic.hpp"
#include "phonoline/hilbert.hpp"

namespace phonoline {

namespace gates {

Matrix ry(double angle);
Matrix hadamard();
// Controlled-X with the control as the most significant index.
Matrix controlled_x();
// Controlled-X with the control as the LEAST significant index; this is the
// matrix convention used by little-endian toolkits.
Matrix x_control();
Matrix cz();

}  // namespace gates

// R_y angles that load the Bell-weight marginals onto the two ancillas:
// cos^2(flip/2) selects the Phi subspace, cos^2(sign/2) the + sign.
struct PrepAngles {
    double flip;
    double sign;
};
PrepAngles prep_angles(const BellDiagonalSpec& spec);

Vector apply_gate(const Vector& psi, const Matrix& gate, const std::vector<int>& targets);
DensityMatrix apply_gate(const DensityMatrix& rho, const Matrix& gate,
                         const std::vector<int>& targets);

struct KrausChannel {
    std::vector<Matrix> kraus;
    // Completeness sum K†K = I to 1e-10.
    void validate() const;
};

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel,
                            const std::vector<int>& targets);

// Single-qubit phase damping that multiplies the coherence by theta.
KrausChannel dephasing_channel(double theta);

// Two-qubit dephasing that multiplies the |ee><gg| coherences by a while
// fixing the inner antidiagonal. On X-form inputs this reproduces the channel
// induced by the shared conditional displacement exactly.
KrausChannel collective_dephasing_channel(double a);

// Single-qubit amplitude damping with excited-population survival p.
KrausChannel amplitude_damping_channel(double p);

// Excited-state survival probability after free decay for time t.
double p_ad(double t, double gamma_s);

// Ancilla rotation angles realizing the two channels on hardware.
double dephasing_ancilla_angle(double theta);
double damping_ancilla_angle(double p);

// Full protocol: circuit preparation of the Bell-diagonal state, collective
// dephasing for time t, then amplitude damping on each qubit.
DensityMatrix run_protocol(const BellDiagonalSpec& spec, double t, double g0, double nbar,
                           double gamma_s);

// Max-abs state difference between applying dephasing before vs after the
// damping stage; bounds the ordering ambiguity of the staged protocol.
double channel_ordering_gap(const BellDiagonalSpec& spec, double t, double g0, double nbar,
                            double gamma_s);

}  // namespace phonoline
