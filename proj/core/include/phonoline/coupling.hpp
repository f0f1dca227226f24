// Projection of excited-state atomic forces onto phonon eigenmodes.
//
// This is an offline utility for externally computed data; the simulation
// modules take dimensionless couplings directly and never depend on it.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phonoline/types.hpp"

namespace phonoline {

// 3N Cartesian force components, units meV/Angstrom.
struct ForceField {
    std::vector<double> values;
    int n_atoms = 0;
};

// Rows are phonon eigenvectors (unit norm to 1e-8); frequencies in meV.
struct ModeBasis {
    Eigen::MatrixXd modes;
    std::vector<double> frequencies;
    std::vector<std::string> labels;  // empty string where the file gave none
};

// One force component per line; '#' starts a comment, blank lines ignored.
ForceField read_forces(const std::string& path);

// Per mode: a header line `frequency[:label]` followed by the eigenvector
// components (whitespace separated, line breaks allowed).
ModeBasis read_modes(const std::string& path);

// Per-mode couplings g_k = <mode_k, F> in meV*Angstrom.
std::vector<double> project_forces(const ForceField& forces, const ModeBasis& basis);

// Order-of-magnitude energy estimate: divide by the lattice parameter.
// Not a rigorous transformation; callers wanting real units need the full
// zero-point amplitude of the mode.
double scale_to_energy(double g_meV_A, double lattice_A);

}  // namespace phonoline
