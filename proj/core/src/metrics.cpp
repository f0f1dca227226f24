#include "phonoline/metrics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace phonoline {

namespace {

Matrix matrix_sqrt_psd(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double g2_zero(const DensityMatrix& rho_b) {
    const Index d = rho_b.mat.rows();
    double n1 = 0.0, n2 = 0.0;
    for (Index n = 0; n < d; ++n) {
        const double pn = rho_b.mat(n, n).real();
        n1 += double(n) * pn;
        n2 += double(n) * double(n - 1) * pn;
    }
    if (n1 <= 1e-12)
        throw NumericalError("g2_zero: undefined for vacuum (mean occupation " +
                             std::to_string(n1) + ")");
    return n2 / (n1 * n1);
}

double fock_fidelity(const DensityMatrix& rho_b, Index n) {
    if (n < 0 || n >= rho_b.mat.rows())
        throw ConfigError("fock_fidelity: Fock index out of range");
    return std::sqrt(std::max(0.0, rho_b.mat(n, n).real()));
}

double pure_target_fidelity(const DensityMatrix& rho, const Vector& psi) {
    if (psi.size() != rho.mat.rows())
        throw ConfigError("pure_target_fidelity: dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw ConfigError("pure_target_fidelity: target state must be normalized");
    const double overlap = (psi.adjoint() * rho.mat * psi)(0).real();
    return std::sqrt(std::max(0.0, overlap));
}

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.mat.rows() != sigma.mat.rows()) throw ConfigError("state_fidelity: dimension mismatch");
    validate_density_matrix(rho, 1e-8, 1e-8, 1e-8, "state_fidelity: first argument");
    validate_density_matrix(sigma, 1e-8, 1e-8, 1e-8, "state_fidelity: second argument");
    const Matrix sq = matrix_sqrt_psd(0.5 * (rho.mat + rho.mat.adjoint()));
    Eigen::SelfAdjointEigenSolver<Matrix> es(sq * (0.5 * (sigma.mat + sigma.mat.adjoint())) * sq);
    return es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

std::vector<double> fock_distribution(const DensityMatrix& rho_b) {
    const Index d = rho_b.mat.rows();
    std::vector<double> p(static_cast<std::size_t>(d), 0.0);
    double sum = 0.0;
    for (Index n = 0; n < d; ++n) {
        p[std::size_t(n)] = rho_b.mat(n, n).real();
        if (p[std::size_t(n)] < -1e-10 || p[std::size_t(n)] > 1.0 + 1e-10)
            throw NumericalError("fock_distribution: population out of [0,1]");
        sum += p[std::size_t(n)];
    }
    if (std::abs(sum - 1.0) > 1e-8)
        throw NumericalError("fock_distribution: populations sum to " + std::to_string(sum));
    return p;
}

double wigner_at(const DensityMatrix& rho_b, Complex alpha) {
    const Index d = rho_b.mat.rows();
    // phi_n = D(alpha)|n> restricted to the first d components, which is exact:
    // phi_0 is the coherent vector and (b† - conj(alpha)) only couples downward.
    Vector x(d);
    const double a2 = std::norm(alpha);
    if (std::abs(alpha) > 0.0) {
        Complex amp = std::exp(Complex(-0.5 * a2, 0.0));
        for (Index m = 0; m < d; ++m) {
            x(m) = amp;
            amp *= alpha / std::sqrt(double(m + 1));
        }
    } else {
        x.setZero();
        x(0) = 1.0;
    }

    const Index n_cap = d + Index(std::ceil(a2 + 8.0 * std::sqrt(a2))) + 30;
    double w = 0.0;
    double sign = 1.0;
    int quiet = 0;
    for (Index n = 0;; ++n) {
        const double contrib = (x.adjoint() * rho_b.mat * x)(0).real();
        w += sign * contrib;
        sign = -sign;
        const double mass = x.squaredNorm();
        quiet = mass < 1e-16 ? quiet + 1 : 0;
        if (quiet >= 5 || n >= n_cap) break;
        // x_{n+1} = (b† - conj(alpha)) x_n / sqrt(n+1), kept in the first d components.
        const double inv = 1.0 / std::sqrt(double(n + 1));
        for (Index m = d - 1; m >= 1; --m)
            x(m) = (std::sqrt(double(m)) * x(m - 1) - std::conj(alpha) * x(m)) * inv;
        x(0) = -std::conj(alpha) * x(0) * inv;
    }
    return w * (2.0 / M_PI);
}

double WignerGrid::integral() const {
    if (re_axis.size() < 2 || im_axis.size() < 2) return 0.0;
    const double dre = re_axis[1] - re_axis[0];
    const double dim = im_axis[1] - im_axis[0];
    return values.sum() * dre * dim;
}

WignerGrid wigner(const DensityMatrix& rho_b, const WignerGridSpec& spec) {
    if (spec.re_points < 2 || spec.im_points < 2)
        throw ConfigError("wigner: grid needs at least 2 points per axis");
    if (!(spec.re_max > spec.re_min) || !(spec.im_max > spec.im_min))
        throw ConfigError("wigner: grid bounds must be increasing");
    WignerGrid grid;
    grid.re_axis.resize(std::size_t(spec.re_points));
    grid.im_axis.resize(std::size_t(spec.im_points));
    for (int i = 0; i < spec.re_points; ++i)
        grid.re_axis[std::size_t(i)] =
            spec.re_min + (spec.re_max - spec.re_min) * double(i) / double(spec.re_points - 1);
    for (int j = 0; j < spec.im_points; ++j)
        grid.im_axis[std::size_t(j)] =
            spec.im_min + (spec.im_max - spec.im_min) * double(j) / double(spec.im_points - 1);
    grid.values.resize(spec.re_points, spec.im_points);
    for (int i = 0; i < spec.re_points; ++i)
        for (int j = 0; j < spec.im_points; ++j)
            grid.values(i, j) =
                wigner_at(rho_b, Complex(grid.re_axis[std::size_t(i)],
                                         grid.im_axis[std::size_t(j)]));
    return grid;
}

}  // namespace phonoline
