// Two-qubit entanglement and quantum-correlation measures.
#pragma once

#include "phonoline/hilbert.hpp"

namespace phonoline {

// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

// Entropy (base 2) of the ensemble on qubit A after projectively measuring
// qubit B along the Bloch direction (theta, phi). Exposed so independent
// minimizers can cross-check discord_x.
double measured_conditional_entropy(const Matrix& rho, double theta, double phi);

// Quantum discord of a two-qubit X state, with the projective measurement on
// the second qubit. Entries outside the X pattern must vanish to 1e-8.
double discord_x(const DensityMatrix& rho);

}  // namespace phonoline
