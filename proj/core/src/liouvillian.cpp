#include "phonoline/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace phonoline {

namespace {

SparseMatrix to_sparse(const Matrix& m) {
    SparseMatrix s = m.sparseView(1.0, 0.0);  // keep every exact nonzero
    s.makeCompressed();
    return s;
}

SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out;
    out = Eigen::kroneckerProduct(a, b);
    out.makeCompressed();
    return out;
}

}  // namespace

Vector vec(const Matrix& rho) {
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvec(const Vector& v, Index dim) {
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Liouvillian build_liouvillian(const Operator& H, const std::vector<Dissipator>& dissipators) {
    const Index D = H.mat.rows();
    if (H.mat.cols() != D) throw ConfigError("build_liouvillian: Hamiltonian must be square");
    for (const Dissipator& dsp : dissipators)
        if (dsp.jump.layout != H.layout)
            throw ConfigError("build_liouvillian: dissipator layout mismatch");

    const SparseMatrix id = to_sparse(Matrix::Identity(D, D));
    const SparseMatrix h = to_sparse(H.mat);
    const SparseMatrix hT = to_sparse(H.mat.transpose());

    const Complex mi(0.0, -1.0);
    SparseMatrix L = mi * (sparse_kron(id, h) - sparse_kron(hT, id));
    for (const Dissipator& dsp : dissipators) {
        const SparseMatrix j = to_sparse(dsp.jump.mat);
        const SparseMatrix jc = to_sparse(dsp.jump.mat.conjugate());
        const Matrix jdj_dense = dsp.jump.mat.adjoint() * dsp.jump.mat;
        const SparseMatrix jdj = to_sparse(jdj_dense);
        const SparseMatrix jdjT = to_sparse(jdj_dense.transpose());
        L += dsp.rate * (2.0 * sparse_kron(jc, j) - sparse_kron(id, jdj) - sparse_kron(jdjT, id));
    }
    L.makeCompressed();
    return {D, H.layout, std::move(L)};
}

Matrix dense(const Liouvillian& L) { return Matrix(L.matrix); }

}  // namespace phonoline
