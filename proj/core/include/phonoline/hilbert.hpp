// Truncated-Fock-space and multi-qubit operator algebra: construction,
// tensor embedding, partial trace, expectation values.
#pragma once

#include <set>

#include "phonoline/types.hpp"

namespace phonoline {

enum class SpinKind { z, plus, minus, x, y };

// <n-1|b|n> = sqrt(n) on the superdiagonal; layout [d].
Operator destroy(Index d);

// 2x2 Pauli/ladder matrices in the (|e>, |g>) basis: sigma_z|e> = +|e>, sigma_plus|g> = |e>.
Operator spin_op(SpinKind kind);

// Identity on the full layout.
Operator identity(const Layout& layout);

// Kronecker product; the left factor is the most significant index block.
Matrix kron(const Matrix& a, const Matrix& b);

// Identity on every factor except `site`, where `op` acts.
Operator embed(const Operator& op, std::size_t site, const Layout& layout);

// Reduced state over `keep` (ascending site indices), in the kept ordering.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

// Tr(op * rho); real within 1e-10 when op is Hermitian.
Complex expect(const Operator& op, const DensityMatrix& rho);

// Fock basis column vector |n> in dimension d.
Vector fock_state(Index d, Index n);

// Throws NumericalError unless Hermitian within herm_tol, trace 1 within trace_tol,
// and smallest eigenvalue >= -eig_tol.
void validate_density_matrix(const DensityMatrix& rho, double trace_tol = 1e-10,
                             double herm_tol = 1e-10, double eig_tol = 1e-8,
                             const std::string& context = {});

}  // namespace phonoline
