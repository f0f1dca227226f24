#include "phonoline/steady.hpp"

#include <Eigen/SparseLU>

namespace phonoline {

namespace {

// Replaces the row for vec index (k,k) with the trace functional and solves M x = e_row.
Vector trace_replaced_solve(const Liouvillian& L, Index k, bool& ok) {
    const Index D = L.dim;
    const Index n = D * D;
    const Index row = k * D + k;

    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(std::size_t(L.matrix.nonZeros()) + std::size_t(D));
    for (Index col = 0; col < L.matrix.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(L.matrix, col); it; ++it)
            if (it.row() != row) trips.emplace_back(int(it.row()), int(col), it.value());
    for (Index i = 0; i < D; ++i) trips.emplace_back(int(row), int(i * D + i), Complex(1.0));

    SparseMatrix M(n, n);
    M.setFromTriplets(trips.begin(), trips.end());
    M.makeCompressed();

    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(M);
    if (lu.info() != Eigen::Success) {
        ok = false;
        return Vector();
    }
    Vector rhs = Vector::Zero(n);
    rhs(row) = 1.0;
    Vector x = lu.solve(rhs);
    ok = lu.info() == Eigen::Success && x.allFinite();
    return x;
}

// Inverse iteration against (L - sigma I); kernel directions dominate the solve.
Vector kernel_probe(const Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>& lu,
                    Vector v) {
    for (int it = 0; it < 2; ++it) {
        v = lu.solve(v);
        const double nrm = v.norm();
        if (!(nrm > 0.0) || !v.allFinite())
            throw NumericalError("steady_state: kernel probe failed");
        v /= nrm;
    }
    return v;
}

}  // namespace

DensityMatrix steady_state(const Liouvillian& L, const SteadyOptions& opts) {
    const Index D = L.dim;
    Vector x;
    bool ok = false;
    for (Index k = 0; k < std::min<Index>(D, 4) && !ok; ++k) x = trace_replaced_solve(L, k, ok);
    if (!ok) throw NumericalError("steady_state: trace-replaced system is singular");

    Matrix rho = unvec(x, D);
    rho = 0.5 * (rho + rho.adjoint().eval());
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-12) throw NumericalError("steady_state: kernel element is traceless");
    rho /= tr;

    const double residual = (L.matrix * vec(rho)).cwiseAbs().maxCoeff();
    if (residual > opts.residual_tol)
        throw NumericalError("steady_state: residual " + std::to_string(residual) +
                             " exceeds tolerance");

    DensityMatrix out{L.layout, std::move(rho)};
    validate_density_matrix(out, 1e-9, 1e-10, opts.eig_tol, "steady_state");

    if (opts.check_uniqueness) {
        // A one-dimensional kernel draws both probes onto the same direction.
        SparseMatrix shifted = L.matrix;
        SparseMatrix id(D * D, D * D);
        id.setIdentity();
        shifted -= Complex(1e-10) * id;
        Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(shifted);
        if (lu.info() == Eigen::Success) {
            Vector seed1 = Vector::Zero(D * D);
            Vector seed2 = Vector::Zero(D * D);
            for (Index i = 0; i < D * D; ++i) {
                // Deterministic pseudo-random seeds; any pair not aligned with the kernel works.
                seed1(i) = Complex(std::sin(0.7 * double(i) + 0.3), std::cos(1.3 * double(i)));
                seed2(i) = Complex(std::cos(0.4 * double(i)), std::sin(2.1 * double(i) + 1.1));
            }
            const Vector v1 = kernel_probe(lu, seed1);
            const Vector v2 = kernel_probe(lu, seed2);
            const double align = std::abs(v1.dot(v2));
            if (align < 1.0 - 1e-6)
                throw NumericalError("steady_state: Liouvillian kernel is degenerate (probe "
                                     "alignment " +
                                     std::to_string(align) + ")");
        }
    }
    return out;
}

}  // namespace phonoline
