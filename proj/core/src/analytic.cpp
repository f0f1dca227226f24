#include "phonoline/analytic.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "phonoline/model.hpp"

namespace phonoline {

std::array<double, 4> BellDiagonalSpec::bell_weights() const {
    return {0.25 * (1.0 + c1 - c2 + c3), 0.25 * (1.0 - c1 + c2 + c3),
            0.25 * (1.0 + c1 + c2 - c3), 0.25 * (1.0 - c1 - c2 - c3)};
}

void BellDiagonalSpec::validate() const {
    for (double w : bell_weights())
        if (w < -1e-12)
            throw ConfigError("bell_diagonal: coefficients give a negative Bell weight " +
                              std::to_string(w));
}

DensityMatrix bd_state(const BellDiagonalSpec& spec) {
    spec.validate();
    DensityMatrix rho;
    rho.layout = Layout{{2, 2}};
    rho.mat = Matrix::Zero(4, 4);
    rho.mat(0, 0) = rho.mat(3, 3) = 0.25 * (1.0 + spec.c3);
    rho.mat(1, 1) = rho.mat(2, 2) = 0.25 * (1.0 - spec.c3);
    rho.mat(0, 3) = rho.mat(3, 0) = 0.25 * (spec.c1 - spec.c2);
    rho.mat(1, 2) = rho.mat(2, 1) = 0.25 * (spec.c1 + spec.c2);
    return rho;
}

namespace {

Complex displaced_thermal_trace(Complex alpha, double nbar, Index d) {
    const Operator b = destroy(d);
    const Matrix gen = alpha * b.mat.adjoint() - std::conj(alpha) * b.mat;
    const Matrix disp = gen.exp();
    const DensityMatrix th = thermal_state(d, nbar);
    return (disp * th.mat).trace();
}

}  // namespace

double coherence_factor(double t, double g0, double nbar, Index d) {
    if (d < 4) throw ConfigError("coherence_factor: truncation too small");
    const Complex eta = 1.0 - std::exp(Complex(0.0, -t));
    const Complex alpha = 4.0 * g0 * eta;
    const Complex a1 = displaced_thermal_trace(alpha, nbar, d);
    const Complex a2 = displaced_thermal_trace(alpha, nbar, d + 5);
    if (std::abs(a1 - a2) > 1e-8)
        throw NumericalError("coherence_factor: truncation " + std::to_string(d) +
                             " not converged (gap " + std::to_string(std::abs(a1 - a2)) + ")");
    if (std::abs(a2.imag()) > 1e-10)
        throw NumericalError("coherence_factor: non-real value, imag " +
                             std::to_string(a2.imag()));
    return a2.real();
}

Index coherence_truncation(double g0) {
    return std::max<Index>(30, Index(std::ceil(64.0 * g0 * g0 + 24.0 * g0 + 20.0)));
}

DensityMatrix bd_evolution(const BellDiagonalSpec& spec, double t, double g0, double nbar) {
    const double a = coherence_factor(t, g0, nbar, coherence_truncation(g0));
    DensityMatrix rho = bd_state(spec);
    rho.mat(0, 3) *= a;
    rho.mat(3, 0) *= a;
    return rho;
}

}  // namespace phonoline
