#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "phonoline/liouvillian.hpp"
#include "phonoline/model.hpp"

using namespace phonoline;

namespace {

Matrix random_density(Index d, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    Matrix a(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    Matrix rho = a * a.adjoint();
    rho /= rho.trace();
    return rho;
}

}  // namespace

TEST_CASE("destroy holds sqrt(n) on the superdiagonal") {
    const Operator b = destroy(4);
    CHECK(b.mat(0, 1).real() == doctest::Approx(1.0));
    CHECK(b.mat(1, 2).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(b.mat(2, 3).real() == doctest::Approx(std::sqrt(3.0)));
    CHECK(b.mat.cwiseAbs().sum() ==
          doctest::Approx(1.0 + std::sqrt(2.0) + std::sqrt(3.0)));
    CHECK_THROWS_AS(destroy(1), ConfigError);
}

TEST_CASE("truncated commutator [b, b†] deviates only in the top level") {
    const Index d = 6;
    const Matrix b = destroy(d).mat;
    const Matrix comm = b * b.adjoint() - b.adjoint() * b;
    for (Index n = 0; n < d - 1; ++n) CHECK(comm(n, n).real() == doctest::Approx(1.0));
    CHECK(comm(d - 1, d - 1).real() == doctest::Approx(-double(d - 1)));
}

TEST_CASE("spin operators act in the (|e>, |g>) basis") {
    const Matrix sz = spin_op(SpinKind::z).mat;
    CHECK(sz(0, 0).real() == 1.0);
    CHECK(sz(1, 1).real() == -1.0);

    // sigma_plus |g> = |e>: |g> is the second basis vector.
    const Matrix sp = spin_op(SpinKind::plus).mat;
    Vector g(2);
    g << 0.0, 1.0;
    const Vector e = sp * g;
    CHECK(std::abs(e(0) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(e(1)) < 1e-15);

    const Matrix sm = spin_op(SpinKind::minus).mat;
    CHECK((sp - sm.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((spin_op(SpinKind::x).mat - (sp + sm)).cwiseAbs().maxCoeff() == 0.0);
    const Matrix sy = spin_op(SpinKind::y).mat;
    CHECK((sy - Complex(0, -1) * (sp - sm)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("embed places the operator at its site with identity elsewhere") {
    const Layout L({2, 2, 3});
    const Operator sz = spin_op(SpinKind::z);
    const Matrix expected0 =
        kron(kron(sz.mat, Matrix::Identity(2, 2)), Matrix::Identity(3, 3));
    CHECK((embed(sz, 0, L).mat - expected0).cwiseAbs().maxCoeff() == 0.0);

    const Matrix expected1 =
        kron(kron(Matrix::Identity(2, 2), sz.mat), Matrix::Identity(3, 3));
    CHECK((embed(sz, 1, L).mat - expected1).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(embed(sz, 2, L), ConfigError);  // dimension mismatch at site 2
    CHECK_THROWS_AS(embed(sz, 3, L), ConfigError);  // out of range
}

TEST_CASE("embedded operators on different sites commute") {
    const Layout L({2, 3});
    const Matrix a = embed(spin_op(SpinKind::x), 0, L).mat;
    const Matrix b = embed(destroy(3), 1, L).mat;
    CHECK((a * b - b * a).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace recovers the factors of a product state") {
    const DensityMatrix s1{Layout({2}), random_density(2, 11)};
    const DensityMatrix s2{Layout({2}), random_density(2, 12)};
    const DensityMatrix ph{Layout({3}), random_density(3, 13)};
    const DensityMatrix joint = joint_initial_state({s1, s2}, ph);

    CHECK((partial_trace(joint, {0}).mat - s1.mat).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace(joint, {1}).mat - s2.mat).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace(joint, {2}).mat - ph.mat).cwiseAbs().maxCoeff() < 1e-12);
    const Matrix pair = kron(s1.mat, s2.mat);
    CHECK((partial_trace(joint, {0, 1}).mat - pair).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(partial_trace(joint, {1, 0}), ConfigError);
    CHECK_THROWS_AS(partial_trace(joint, {0, 0}), ConfigError);
    CHECK_THROWS_AS(partial_trace(joint, {3}), ConfigError);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
    Matrix bell = Matrix::Zero(4, 4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    const DensityMatrix rho{Layout({2, 2}), bell};
    const DensityMatrix a = partial_trace(rho, {0});
    CHECK(a.mat(0, 0).real() == doctest::Approx(0.5));
    CHECK(a.mat(1, 1).real() == doctest::Approx(0.5));
    CHECK(std::abs(a.mat(0, 1)) < 1e-15);
}

TEST_CASE("expect matches the trace formula") {
    const Layout L({2, 3});
    const Operator n_op{L, embed(destroy(3), 1, L).mat.adjoint() *
                               embed(destroy(3), 1, L).mat};
    const DensityMatrix rho{L, random_density(6, 21)};
    const Complex direct = (n_op.mat * rho.mat).trace();
    CHECK(std::abs(expect(n_op, rho) - direct) < 1e-13);
}

TEST_CASE("validate_density_matrix rejects each defect") {
    const DensityMatrix good{Layout({3}), random_density(3, 31)};
    CHECK_NOTHROW(validate_density_matrix(good));

    DensityMatrix scaled = good;
    scaled.mat *= 1.001;
    CHECK_THROWS_AS(validate_density_matrix(scaled), NumericalError);

    DensityMatrix skew = good;
    skew.mat(0, 1) += Complex(0.01, 0.0);
    CHECK_THROWS_AS(validate_density_matrix(skew), NumericalError);

    DensityMatrix indefinite{Layout({2}), Matrix::Zero(2, 2)};
    indefinite.mat(0, 0) = 1.5;
    indefinite.mat(1, 1) = -0.5;
    CHECK_THROWS_AS(validate_density_matrix(indefinite), NumericalError);
}

TEST_CASE("hamiltonian for one emitter matches the hand-built matrix") {
    SystemParams p;
    p.n_spins = 1;
    p.d = 3;
    p.delta = {0.7};
    p.g = {0.33};
    p.omega_drive = {0.43};

    const Matrix I2 = Matrix::Identity(2, 2);
    const Matrix b = destroy(3).mat;
    const Matrix sz = spin_op(SpinKind::z).mat;
    const Matrix sx = spin_op(SpinKind::x).mat;
    const Matrix expected = kron(I2, b.adjoint() * b) + 0.35 * kron(sz, Matrix::Identity(3, 3)) +
                            0.33 * kron(sz, b + b.adjoint()) +
                            0.43 * kron(sx, Matrix::Identity(3, 3));

    const Operator H = build_hamiltonian(p);
    CHECK(H.layout == Layout({2, 3}));
    CHECK((H.mat - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((H.mat - H.mat.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("dissipator list carries full prefactors in the documented order") {
    SystemParams p;
    p.n_spins = 2;
    p.d = 4;
    p.delta = {0.0, 0.0};
    p.g = {0.33, 0.33};
    p.omega_drive = {0.0, 0.0};
    p.gamma_b = 1e-3;
    p.gamma_s = 1e-5;
    p.gamma_phi = 1e-5;
    p.nbar_b = 0.003;
    p.nbar_s = 0.0;

    const auto ds = build_dissipators(p);
    REQUIRE(ds.size() == 6);
    CHECK(ds[0].rate == doctest::Approx(5.015e-4));  // (gamma_b/2)(1 + nbar_b)
    CHECK(ds[1].rate == doctest::Approx(1.5e-6));    // (gamma_b/2) nbar_b
    CHECK(ds[2].rate == doctest::Approx(5e-6));      // spin 1 decay
    CHECK(ds[3].rate == doctest::Approx(5e-6));      // spin 1 dephasing
    CHECK(ds[4].rate == doctest::Approx(5e-6));      // spin 2 decay
    CHECK(ds[5].rate == doctest::Approx(5e-6));      // spin 2 dephasing

    const Layout L = p.layout();
    CHECK((ds[0].jump.mat - embed(destroy(4), 2, L).mat).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ds[1].jump.mat - embed(destroy(4), 2, L).mat.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ds[2].jump.mat - embed(spin_op(SpinKind::minus), 0, L).mat).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK((ds[3].jump.mat - embed(spin_op(SpinKind::z), 0, L).mat).cwiseAbs().maxCoeff() == 0.0);

    p.gamma_b = p.gamma_s = p.gamma_phi = 0.0;
    CHECK(build_dissipators(p).empty());
}

TEST_CASE("params validation rejects malformed inputs") {
    SystemParams p;
    p.n_spins = 2;
    p.delta = {0.0};  // wrong length
    p.g = {0.1, 0.1};
    p.omega_drive = {0.0, 0.0};
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.delta = {0.0, 0.0};
    CHECK_NOTHROW(p.validate());
    p.gamma_b = -1e-3;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("bose_einstein inverts the occupation formula") {
    CHECK(bose_einstein(1.0, 0.0) == 0.0);
    // kT chosen so that nbar(omega = 1) = 0.003.
    CHECK(bose_einstein(1.0, 0.172054) == doctest::Approx(0.003).epsilon(1e-4));
    CHECK(bose_einstein(1.0, 1.0) == doctest::Approx(1.0 / std::expm1(1.0)));
    CHECK_THROWS_AS(bose_einstein(0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(bose_einstein(1.0, -0.1), ConfigError);
}

TEST_CASE("thermal state is geometric with the requested mean occupation") {
    const DensityMatrix th = thermal_state(30, 0.25);
    CHECK(std::abs(th.mat.trace() - Complex(1.0)) < 1e-14);
    double mean = 0.0;
    for (Index n = 0; n < 30; ++n) mean += double(n) * th.mat(n, n).real();
    CHECK(mean == doctest::Approx(0.25).epsilon(1e-9));
    // Geometric ratio between successive populations.
    CHECK(th.mat(5, 5).real() / th.mat(4, 4).real() == doctest::Approx(0.2));
    CHECK_THROWS_AS(thermal_state(3, 1.0), ConfigError);  // discarded tail too heavy
}

TEST_CASE("spin_superposition follows the (beta, alpha) component order") {
    const DensityMatrix ground = spin_superposition(1.0, 0.0);
    CHECK(ground.mat(1, 1).real() == doctest::Approx(1.0));
    CHECK(ground.mat(0, 0).real() == doctest::Approx(0.0));

    const DensityMatrix excited = spin_superposition(0.0, 1.0);
    CHECK(excited.mat(0, 0).real() == doctest::Approx(1.0));

    const double r = 1.0 / std::sqrt(2.0);
    const DensityMatrix plus = spin_superposition(r, r);
    CHECK(plus.mat(0, 1).real() == doctest::Approx(0.5));
    CHECK_THROWS_AS(spin_superposition(1.0, 1.0), ConfigError);
}

TEST_CASE("vec follows column stacking and unvec inverts it") {
    Matrix m(2, 2);
    m << Complex(1, 0), Complex(3, 0), Complex(2, 0), Complex(4, 0);
    const Vector v = vec(m);
    CHECK(v(0).real() == 1.0);
    CHECK(v(1).real() == 2.0);
    CHECK(v(2).real() == 3.0);
    CHECK(v(3).real() == 4.0);
    CHECK((unvec(v, 2) - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("liouvillian action equals the superoperator-free right-hand side") {
    SystemParams p;
    p.n_spins = 1;
    p.d = 4;
    p.delta = {0.9};
    p.g = {0.4};
    p.omega_drive = {0.27};
    p.gamma_b = 0.02;
    p.gamma_s = 0.05;
    p.gamma_phi = 0.01;
    p.nbar_b = 0.1;
    p.nbar_s = 0.05;

    const Operator H = build_hamiltonian(p);
    const auto ds = build_dissipators(p);
    const Liouvillian L = build_liouvillian(H, ds);
    CHECK(L.dim == 8);

    const Matrix rho = random_density(8, 41);
    const Matrix got = unvec(phonoline::apply(L, vec(rho)), 8);

    Matrix want = Complex(0, -1) * (H.mat * rho - rho * H.mat);
    for (const Dissipator& d : ds) {
        const Matrix& J = d.jump.mat;
        const Matrix jdj = J.adjoint() * J;
        want += d.rate * (2.0 * J * rho * J.adjoint() - jdj * rho - rho * jdj);
    }
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);

    // The generator is trace-free and maps Hermitian to Hermitian.
    CHECK(std::abs(got.trace()) < 1e-12);
    CHECK((got - got.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dense round trip preserves the sparse Liouvillian") {
    SystemParams p;
    p.n_spins = 1;
    p.d = 3;
    p.delta = {0.0};
    p.g = {0.2};
    p.omega_drive = {0.1};
    p.gamma_b = 0.01;
    const Liouvillian L = build_liouvillian(build_hamiltonian(p), build_dissipators(p));
    const Matrix d = dense(L);
    CHECK(d.rows() == 36);
    CHECK((Matrix(L.matrix) - d).cwiseAbs().maxCoeff() == 0.0);
}
