#include "phonoline/model.hpp"

#include <cmath>

namespace phonoline {

Layout SystemParams::layout() const {
    std::vector<Index> dims(std::size_t(n_spins), Index{2});
    dims.push_back(d);
    return Layout(std::move(dims));
}

void SystemParams::validate() const {
    if (n_spins < 1) throw ConfigError("params: n_spins must be >= 1");
    if (d < 2) throw ConfigError("params: truncation must be >= 2");
    const std::size_t n = std::size_t(n_spins);
    if (delta.size() != n || g.size() != n || omega_drive.size() != n)
        throw ConfigError("params: delta, g, omega_drive must each have n_spins entries");
    for (double r : {gamma_b, gamma_s, gamma_phi, nbar_b, nbar_s})
        if (r < 0.0 || !std::isfinite(r))
            throw ConfigError("params: rates and occupations must be finite and >= 0");
    for (double v : delta)
        if (!std::isfinite(v)) throw ConfigError("params: delta entries must be finite");
    for (double v : g)
        if (!std::isfinite(v)) throw ConfigError("params: g entries must be finite");
    for (double v : omega_drive)
        if (!std::isfinite(v)) throw ConfigError("params: omega_drive entries must be finite");
}

Operator build_hamiltonian(const SystemParams& p) {
    p.validate();
    const Layout L = p.layout();
    const std::size_t phonon = L.sites() - 1;

    const Operator b = destroy(p.d);
    const Operator b_full = embed(b, phonon, L);
    const Matrix x_full = b_full.mat + b_full.mat.adjoint();

    Matrix H = b_full.mat.adjoint() * b_full.mat;
    for (int j = 0; j < p.n_spins; ++j) {
        const Matrix sz = embed(spin_op(SpinKind::z), std::size_t(j), L).mat;
        const Matrix sp = embed(spin_op(SpinKind::plus), std::size_t(j), L).mat;
        H += 0.5 * p.delta[std::size_t(j)] * sz;
        H += p.g[std::size_t(j)] * sz * x_full;
        H += p.omega_drive[std::size_t(j)] * (sp + sp.adjoint());
    }
    return {L, std::move(H)};
}

std::vector<Dissipator> build_dissipators(const SystemParams& p) {
    p.validate();
    const Layout L = p.layout();
    const std::size_t phonon = L.sites() - 1;
    std::vector<Dissipator> out;

    auto push = [&out](double rate, Operator jump) {
        if (rate > 0.0) out.push_back({rate, std::move(jump)});
    };

    const Operator b_full = embed(destroy(p.d), phonon, L);
    push(0.5 * p.gamma_b * (1.0 + p.nbar_b), b_full);
    push(0.5 * p.gamma_b * p.nbar_b, {L, b_full.mat.adjoint()});
    for (int j = 0; j < p.n_spins; ++j) {
        push(0.5 * p.gamma_s * (1.0 + p.nbar_s),
             embed(spin_op(SpinKind::minus), std::size_t(j), L));
        push(0.5 * p.gamma_s * p.nbar_s, embed(spin_op(SpinKind::plus), std::size_t(j), L));
        push(0.5 * p.gamma_phi, embed(spin_op(SpinKind::z), std::size_t(j), L));
    }
    return out;
}

double bose_einstein(double omega, double kT) {
    if (omega <= 0.0) throw ConfigError("bose_einstein: omega must be > 0");
    if (kT < 0.0) throw ConfigError("bose_einstein: kT must be >= 0");
    if (kT == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / kT);
}

DensityMatrix thermal_state(Index d, double nbar) {
    if (d < 2) throw ConfigError("thermal_state: truncation must be >= 2");
    if (nbar < 0.0) throw ConfigError("thermal_state: nbar must be >= 0");
    // Discarded tail weight is (nbar/(1+nbar))^d.
    const double tail = nbar > 0.0 ? std::pow(nbar / (1.0 + nbar), double(d)) : 0.0;
    if (tail > 1e-9)
        throw ConfigError("thermal_state: truncation too small for nbar (tail " +
                          std::to_string(tail) + ")");
    Matrix m = Matrix::Zero(d, d);
    double norm = 0.0;
    for (Index n = 0; n < d; ++n) {
        const double pn = std::pow(nbar, double(n)) / std::pow(1.0 + nbar, double(n) + 1.0);
        m(n, n) = pn;
        norm += pn;
    }
    m /= norm;
    return {Layout({d}), std::move(m)};
}

DensityMatrix spin_superposition(Complex alpha, Complex beta) {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0) > 1e-10)
        throw ConfigError("spin_superposition: |alpha|^2 + |beta|^2 must be 1");
    Vector psi(2);
    psi << beta, alpha;  // (|e>, |g>) ordering
    return {Layout({2}), psi * psi.adjoint()};
}

DensityMatrix joint_initial_state(const std::vector<DensityMatrix>& spin_states,
                                  const DensityMatrix& phonon) {
    if (spin_states.empty()) throw ConfigError("joint_initial_state: need at least one spin");
    Layout L;
    Matrix m = Matrix::Identity(1, 1);
    for (const DensityMatrix& s : spin_states) {
        if (s.mat.rows() != 2) throw ConfigError("joint_initial_state: spin states must be 2x2");
        L.dims.push_back(2);
        m = kron(m, s.mat);
    }
    L.dims.push_back(phonon.mat.rows());
    m = kron(m, phonon.mat);
    DensityMatrix rho{std::move(L), std::move(m)};
    validate_density_matrix(rho, 1e-10, 1e-10, 1e-8, "joint_initial_state");
    return rho;
}

}  // namespace phonoline
