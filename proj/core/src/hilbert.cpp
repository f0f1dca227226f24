#include "phonoline/hilbert.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace phonoline {

Operator destroy(Index d) {
    if (d < 2) throw ConfigError("destroy: truncation must be >= 2");
    Matrix b = Matrix::Zero(d, d);
    for (Index n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(double(n));
    return {Layout({d}), std::move(b)};
}

Operator spin_op(SpinKind kind) {
    Matrix m = Matrix::Zero(2, 2);
    switch (kind) {
        case SpinKind::z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        case SpinKind::plus:
            m(0, 1) = 1.0;
            break;
        case SpinKind::minus:
            m(1, 0) = 1.0;
            break;
        case SpinKind::x:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case SpinKind::y:
            m(0, 1) = Complex(0, -1);
            m(1, 0) = Complex(0, 1);
            break;
        default:
            throw ConfigError("spin_op: unknown kind");
    }
    return {Layout({2}), std::move(m)};
}

Operator identity(const Layout& layout) {
    layout.validate();
    return {layout, Matrix::Identity(layout.total(), layout.total())};
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Operator embed(const Operator& op, std::size_t site, const Layout& layout) {
    layout.validate();
    if (site >= layout.sites()) throw ConfigError("embed: site index out of range");
    if (op.mat.rows() != layout.dims[site])
        throw ConfigError("embed: operator dimension does not match layout site");
    Index pre = 1, post = 1;
    for (std::size_t k = 0; k < site; ++k) pre *= layout.dims[k];
    for (std::size_t k = site + 1; k < layout.sites(); ++k) post *= layout.dims[k];
    Matrix m = kron(kron(Matrix::Identity(pre, pre), op.mat), Matrix::Identity(post, post));
    return {layout, std::move(m)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
    const Layout& L = rho.layout;
    L.validate();
    if (rho.mat.rows() != L.total()) throw ConfigError("partial_trace: matrix/layout mismatch");
    if (keep.empty()) throw ConfigError("partial_trace: keep set must be nonempty");
    for (std::size_t s : keep)
        if (s >= L.sites()) throw ConfigError("partial_trace: keep index out of range");
    if (!std::is_sorted(keep.begin(), keep.end()) ||
        std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw ConfigError("partial_trace: keep indices must be ascending and unique");

    std::vector<std::size_t> traced;
    for (std::size_t s = 0; s < L.sites(); ++s)
        if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);

    // Strides of each site in the flat (row-major over sites) index.
    std::vector<Index> stride(L.sites(), 1);
    for (std::size_t s = L.sites(); s-- > 1;) stride[s - 1] = stride[s] * L.dims[s];

    Index dim_keep = 1, dim_traced = 1;
    std::vector<Index> kdims, tdims;
    for (std::size_t s : keep) {
        kdims.push_back(L.dims[s]);
        dim_keep *= L.dims[s];
    }
    for (std::size_t s : traced) {
        tdims.push_back(L.dims[s]);
        dim_traced *= L.dims[s];
    }

    // Flat offset of a composite (kept, traced) index pair.
    auto offset = [&](Index ik, Index it) {
        Index off = 0;
        for (std::size_t p = keep.size(); p-- > 0;) {
            off += (ik % kdims[p]) * stride[keep[p]];
            ik /= kdims[p];
        }
        for (std::size_t p = traced.size(); p-- > 0;) {
            off += (it % tdims[p]) * stride[traced[p]];
            it /= tdims[p];
        }
        return off;
    };

    Matrix out = Matrix::Zero(dim_keep, dim_keep);
    for (Index r = 0; r < dim_keep; ++r)
        for (Index c = 0; c < dim_keep; ++c) {
            Complex acc = 0;
            for (Index t = 0; t < dim_traced; ++t) acc += rho.mat(offset(r, t), offset(c, t));
            out(r, c) = acc;
        }

    Layout kept_layout;
    for (std::size_t s : keep) kept_layout.dims.push_back(L.dims[s]);
    return {std::move(kept_layout), std::move(out)};
}

Complex expect(const Operator& op, const DensityMatrix& rho) {
    if (op.layout != rho.layout) throw ConfigError("expect: layout mismatch");
    // Tr(op * rho) without forming the product.
    return (op.mat.transpose().cwiseProduct(rho.mat)).sum();
}

Vector fock_state(Index d, Index n) {
    if (n < 0 || n >= d) throw ConfigError("fock_state: index out of range");
    Vector v = Vector::Zero(d);
    v(n) = 1.0;
    return v;
}

void validate_density_matrix(const DensityMatrix& rho, double trace_tol, double herm_tol,
                             double eig_tol, const std::string& context) {
    const std::string where = context.empty() ? std::string("state") : context;
    if (rho.mat.rows() != rho.mat.cols() || rho.mat.rows() != rho.layout.total())
        throw NumericalError(where + ": matrix/layout dimension mismatch");
    const double trace_err = std::abs(rho.mat.trace() - Complex(1.0));
    if (trace_err > trace_tol)
        throw NumericalError(where + ": trace deviates from 1 by " + std::to_string(trace_err));
    const double herm_err = (rho.mat - rho.mat.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > herm_tol)
        throw NumericalError(where + ": non-Hermitian by " + std::to_string(herm_err));
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho.mat + rho.mat.adjoint()),
                                             Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -eig_tol)
        throw NumericalError(where + ": negative eigenvalue " + std::to_string(min_eig));
}

}  // namespace phonoline
