#include "phonoline/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace phonoline {

namespace {

void require_two_qubit(const DensityMatrix& rho, const char* who) {
    if (rho.mat.rows() != 4 || rho.mat.cols() != 4)
        throw ConfigError(std::string(who) + ": expects a 4x4 two-qubit state");
}

double h2_term(double p) { return p > 1e-15 ? -p * std::log2(p) : 0.0; }

// Entropy of a Hermitian 2x2 with the given entries, normalized by its trace.
double entropy2(double d0, double d1, Complex off, double trace) {
    const double mean = 0.5 * (d0 + d1);
    const double disc = std::sqrt(0.25 * (d0 - d1) * (d0 - d1) + std::norm(off));
    return h2_term((mean + disc) / trace) + h2_term((mean - disc) / trace);
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
    require_two_qubit(rho, "concurrence");
    Matrix yy(4, 4);
    yy.setZero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix r = rho.mat * yy * rho.mat.conjugate() * yy;
    Eigen::ComplexEigenSolver<Matrix> es(r);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        double v = es.eigenvalues()(i).real();
        if (v < -1e-10)
            throw NumericalError("concurrence: spectrum of rho rho~ has eigenvalue " +
                                 std::to_string(v));
        lam[std::size_t(i)] = std::sqrt(std::max(0.0, v));
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double measured_conditional_entropy(const Matrix& rho, double theta, double phi) {
    // Projector onto the Bloch direction (theta, phi) and its complement.
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const Complex e = std::exp(Complex(0.0, phi));
    Matrix p(2, 2);
    p(0, 0) = c * c;
    p(0, 1) = c * s * std::conj(e);
    p(1, 0) = c * s * e;
    p(1, 1) = s * s;

    double total = 0.0;
    for (int sign = 0; sign < 2; ++sign) {
        const Matrix proj = sign == 0 ? p : Matrix(Matrix::Identity(2, 2) - p);
        // M(a,a') = Tr_B[rho (I x proj)], with the first qubit most significant.
        Complex m00 = 0, m01 = 0, m11 = 0;
        for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp) {
                const Complex w = proj(bp, b);
                m00 += rho(b, bp) * w;
                m01 += rho(b, 2 + bp) * w;
                m11 += rho(2 + b, 2 + bp) * w;
            }
        const double prob = m00.real() + m11.real();
        if (prob < 1e-14) continue;
        total += prob * entropy2(m00.real(), m11.real(), m01, prob);
    }
    return total;
}

double discord_x(const DensityMatrix& rho) {
    require_two_qubit(rho, "discord_x");
    const Matrix& m = rho.mat;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && i + j != 3 && std::abs(m(i, j)) > 1e-8)
                throw ConfigError("discord_x: input is not an X state (entry " +
                                  std::to_string(i) + "," + std::to_string(j) + ")");

    // S(AB): the X pattern splits into two 2x2 blocks.
    const double s_ab =
        entropy2(m(0, 0).real(), m(3, 3).real(), m(0, 3), 1.0) +
        entropy2(m(1, 1).real(), m(2, 2).real(), m(1, 2), 1.0);

    // S(B): reduced state of the measured (second) qubit.
    const double b0 = m(0, 0).real() + m(2, 2).real();
    const double s_b = h2_term(b0) + h2_term(1.0 - b0);

    // Minimum conditional entropy: axis candidates, then a refined grid search.
    double best = std::min({measured_conditional_entropy(m, 0.0, 0.0),
                            measured_conditional_entropy(m, M_PI / 2, 0.0),
                            measured_conditional_entropy(m, M_PI / 2, M_PI / 2)});
    double t_lo = 0.0, t_hi = M_PI / 2, p_lo = 0.0, p_hi = M_PI;
    double t_best = 0.0, p_best = 0.0;
    for (int pass = 0; pass < 3; ++pass) {
        const int nt = pass == 0 ? 129 : 33;
        const int np = pass == 0 ? 129 : 33;
        for (int i = 0; i < nt; ++i)
            for (int j = 0; j < np; ++j) {
                const double t = t_lo + (t_hi - t_lo) * double(i) / double(nt - 1);
                const double ph = p_lo + (p_hi - p_lo) * double(j) / double(np - 1);
                const double v = measured_conditional_entropy(m, t, ph);
                if (v < best) {
                    best = v;
                    t_best = t;
                    p_best = ph;
                }
            }
        const double t_w = (t_hi - t_lo) / 8.0, p_w = (p_hi - p_lo) / 8.0;
        t_lo = std::max(0.0, t_best - t_w);
        t_hi = std::min(M_PI / 2, t_best + t_w);
        p_lo = p_best - p_w;
        p_hi = p_best + p_w;
    }

    return std::max(0.0, s_b - s_ab + best);
}

}  // namespace phonoline
