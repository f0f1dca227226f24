#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>

#include <Eigen/Eigenvalues>

#include "phonoline/entanglement.hpp"

using namespace phonoline;

namespace {

DensityMatrix bell_phi_plus() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return {Layout({2, 2}), m};
}

DensityMatrix werner(double p) {
    Matrix psi_minus = Matrix::Zero(4, 4);
    psi_minus(1, 1) = psi_minus(2, 2) = 0.5;
    psi_minus(1, 2) = psi_minus(2, 1) = -0.5;
    Matrix m = p * psi_minus + (1.0 - p) * 0.25 * Matrix::Identity(4, 4);
    return {Layout({2, 2}), m};
}

Matrix random_unitary2(std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    Matrix a(2, 2);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    const Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    // Fix the phases so Q is properly unitary with unit-modulus diagonal of R.
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < 2; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
    return q;
}

// X-form state with random populations, corner magnitudes, and phases.
DensityMatrix random_x_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::array<double, 4> pop{};
    double sum = 0.0;
    for (double& v : pop) {
        v = uni(rng) + 1e-3;
        sum += v;
    }
    for (double& v : pop) v /= sum;

    const double outer = uni(rng) * std::sqrt(pop[0] * pop[3]);
    const double inner = uni(rng) * std::sqrt(pop[1] * pop[2]);
    const Complex e_out = std::exp(Complex(0.0, 2.0 * M_PI * uni(rng)));
    const Complex e_in = std::exp(Complex(0.0, 2.0 * M_PI * uni(rng)));

    Matrix m = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) m(i, i) = pop[std::size_t(i)];
    m(0, 3) = outer * e_out;
    m(3, 0) = std::conj(m(0, 3));
    m(1, 2) = inner * e_in;
    m(2, 1) = std::conj(m(1, 2));
    return {Layout({2, 2}), m};
}

double entropy_of(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double v = es.eigenvalues()(i);
        if (v > 1e-15) s -= v * std::log2(v);
    }
    return s;
}

// Independent minimizer: full Bloch sphere, coarse grid plus two refinements,
// deliberately different resolutions from the implementation.
double discord_oracle(const DensityMatrix& rho) {
    const Matrix& m = rho.mat;
    Matrix b = Matrix::Zero(2, 2);
    b(0, 0) = m(0, 0) + m(2, 2);
    b(1, 1) = m(1, 1) + m(3, 3);
    b(0, 1) = m(0, 1) + m(2, 3);
    b(1, 0) = std::conj(b(0, 1));
    const double s_b = entropy_of(b);
    const double s_ab = entropy_of(m);

    double best = 1e9, t_best = 0.0, p_best = 0.0;
    double t_lo = 0.0, t_hi = M_PI, p_lo = 0.0, p_hi = 2.0 * M_PI;
    for (int pass = 0; pass < 3; ++pass) {
        const int nt = pass == 0 ? 91 : 21;
        const int np = pass == 0 ? 181 : 21;
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
        const double t_w = (t_hi - t_lo) / double(pass == 0 ? 45 : 10);
        const double p_w = (p_hi - p_lo) / double(pass == 0 ? 90 : 10);
        t_lo = t_best - t_w;
        t_hi = t_best + t_w;
        p_lo = p_best - p_w;
        p_hi = p_best + p_w;
    }
    return std::max(0.0, s_b - s_ab + best);
}

}  // namespace

TEST_CASE("concurrence of reference states") {
    CHECK(concurrence(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-10));
    // Werner: C = max(0, (3p - 1)/2).
    CHECK(std::abs(concurrence(werner(0.9)) - 0.85) < 1e-8);
    CHECK(concurrence(werner(1.0 / 3.0)) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(concurrence(werner(0.2)) == 0.0);

    Matrix prod = Matrix::Zero(4, 4);
    prod(1, 1) = 1.0;  // |e g>
    CHECK(concurrence(DensityMatrix{Layout({2, 2}), prod}) == 0.0);

    const DensityMatrix odd{Layout({3}), Matrix::Identity(3, 3) / 3.0};
    CHECK_THROWS_AS(concurrence(odd), ConfigError);
}

TEST_CASE("concurrence is invariant under local unitaries") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = random_x_state(rng);
        const double c0 = concurrence(rho);

        Matrix u = Matrix::Zero(4, 4);
        const Matrix u1 = random_unitary2(rng);
        const Matrix u2 = random_unitary2(rng);
        for (Index i = 0; i < 2; ++i)
            for (Index j = 0; j < 2; ++j) u.block(2 * i, 2 * j, 2, 2) = u1(i, j) * u2;

        DensityMatrix rotated = rho;
        rotated.mat = u * rho.mat * u.adjoint();
        CHECK(concurrence(rotated) == doctest::Approx(c0).epsilon(1e-9));
    }
}

TEST_CASE("concurrence of X states matches the closed form") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = random_x_state(rng);
        const Matrix& m = rho.mat;
        const double expected =
            2.0 * std::max({0.0,
                            std::abs(m(0, 3)) - std::sqrt(m(1, 1).real() * m(2, 2).real()),
                            std::abs(m(1, 2)) - std::sqrt(m(0, 0).real() * m(3, 3).real())});
        CHECK(concurrence(rho) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("discord vanishes on classical and product states") {
    Matrix classical = Matrix::Zero(4, 4);
    classical(0, 0) = classical(3, 3) = 0.5;
    CHECK(discord_x(DensityMatrix{Layout({2, 2}), classical}) ==
          doctest::Approx(0.0).epsilon(1e-9));

    Matrix product = Matrix::Zero(4, 4);
    product(0, 0) = 0.21;
    product(1, 1) = 0.09;
    product(2, 2) = 0.49;
    product(3, 3) = 0.21;  // diag(0.3, 0.7) x diag(0.7, 0.3)
    CHECK(discord_x(DensityMatrix{Layout({2, 2}), product}) ==
          doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("discord of a Bell state is one") {
    CHECK(discord_x(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("discord rejects non-X input") {
    Matrix m = Matrix::Identity(4, 4) * 0.25;
    m(0, 1) = m(1, 0) = 0.1;
    CHECK_THROWS_AS(discord_x(DensityMatrix{Layout({2, 2}), m}), ConfigError);
}

TEST_CASE("discord matches an independent full-sphere minimizer on random X states") {
    std::mt19937 rng(2026);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho = random_x_state(rng);
        const double got = discord_x(rho);
        const double want = discord_oracle(rho);
        worst = std::max(worst, std::abs(got - want));
    }
    CHECK(worst < 1e-4);
}
