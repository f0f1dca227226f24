// Liouvillian superoperator on column-stacked density matrices.
#pragma once

#include <Eigen/SparseCore>

#include "phonoline/model.hpp"

namespace phonoline {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

// Generator of rho' = -i[H, rho] + sum_k rate_k (2 J rho J† - J†J rho - rho J†J),
// represented on vec(rho) via vec(AXB) = (B^T x A) vec(X). Stored sparse; the
// action is what is contracted, tests pin it against the dense construction.
struct Liouvillian {
    Index dim = 0;        // Hilbert dimension D
    Layout layout;        // layout of the states it propagates
    SparseMatrix matrix;  // D^2 x D^2
};

Liouvillian build_liouvillian(const Operator& H, const std::vector<Dissipator>& dissipators);

// Column-major stacking and its inverse.
Vector vec(const Matrix& rho);
Matrix unvec(const Vector& v, Index dim);

inline Vector apply(const Liouvillian& L, const Vector& vec_rho) { return L.matrix * vec_rho; }

// Dense form, for oracles and small-system diagnostics only.
Matrix dense(const Liouvillian& L);

}  // namespace phonoline
