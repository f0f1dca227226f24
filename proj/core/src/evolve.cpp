#include "phonoline/evolve.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>

namespace phonoline {

namespace {

// Scaled RMS error norm; <= 1 means the step is acceptable.
double error_norm(const Vector& err, const Vector& y0, const Vector& y1, double rtol,
                  double atol) {
    double acc = 0.0;
    for (Index i = 0; i < err.size(); ++i) {
        const double scale = atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double q = std::abs(err(i)) / scale;
        acc += q * q;
    }
    return std::sqrt(acc / double(err.size()));
}

void check_sample(const DensityMatrix& rho, double t, const EvolveOptions& opts) {
    if (opts.validate)
        validate_density_matrix(rho, opts.trace_tol, opts.herm_tol, opts.eig_tol,
                                "evolve: state at t=" + std::to_string(t));
    if (opts.truncation_guard > 0.0 && rho.layout.dims.back() >= 2) {
        const std::vector<std::size_t> phonon = {rho.layout.sites() - 1};
        const DensityMatrix rb = partial_trace(rho, phonon);
        const Index d = rb.mat.rows();
        const double top2 = rb.mat(d - 1, d - 1).real() + rb.mat(d - 2, d - 2).real();
        if (top2 >= opts.truncation_guard)
            throw NumericalError("evolve: truncation inadequate at t=" + std::to_string(t) +
                                 " (top-two Fock populations " + std::to_string(top2) + ")");
    }
}

// Dormand-Prince 5(4) with FSAL; the right-hand side is the fixed linear map L.
class Rk45 {
  public:
    Rk45(const SparseMatrix& L, double rtol, double atol) : L_(L), rtol_(rtol), atol_(atol) {
        // Near equilibrium the error norm goes flat and the controller would
        // otherwise push h past the stability boundary, where the fastest
        // eigenmodes amplify roundoff instead of being flagged by the error
        // estimate. Gershgorin bounds every |lambda|, so capping h keeps all
        // modes strictly inside the stability region.
        std::vector<double> row_sum(std::size_t(L.rows()), 0.0);
        for (Index k = 0; k < L.outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(L, k); it; ++it)
                row_sum[std::size_t(it.row())] += std::abs(it.value());
        const double radius = *std::max_element(row_sum.begin(), row_sum.end());
        h_max_ = radius > 0.0 ? 2.5 / radius : 1e6;
        h_ = std::min(1e-3, h_max_);
    }

    // Advances y from t exactly to target.
    void integrate_to(Vector& y, double& t, double target, Vector& k1) {
        while (t < target) {
            const bool clamped = t + h_ >= target - 1e-14 * std::max(1.0, std::abs(target));
            const double h = clamped ? target - t : h_;
            if (h < 1e-14 * std::max(1.0, std::abs(t)))
                throw NumericalError("evolve: step underflow at t=" + std::to_string(t));

            const Vector k2 = L_ * (y + h * (a21 * k1));
            const Vector k3 = L_ * (y + h * (a31 * k1 + a32 * k2));
            const Vector k4 = L_ * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const Vector k5 = L_ * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Vector k6 =
                L_ * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Vector ynew =
                y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Vector k7 = L_ * ynew;
            const Vector err =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const double en = error_norm(err, y, ynew, rtol_, atol_);
            const double factor =
                en > 0.0 ? std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0) : 5.0;
            if (en <= 1.0) {
                t = clamped ? target : t + h;
                y = ynew;
                k1 = k7;  // FSAL
                if (!clamped) h_ = std::min(h_ * factor, h_max_);
            } else {
                h_ = h * std::max(0.2, 0.9 * std::pow(en, -0.2));
            }
        }
    }

  private:
    const SparseMatrix& L_;
    double rtol_, atol_, h_, h_max_;

    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                            a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = b1 - 5179.0 / 57600.0, e3 = b3 - 7571.0 / 16695.0,
                            e4 = b4 - 393.0 / 640.0, e5 = b5 + 92097.0 / 339200.0,
                            e6 = b6 - 187.0 / 2100.0, e7 = -1.0 / 40.0;
};

// TR-BDF2 with gamma = 2 - sqrt(2): both stages share the matrix (I - (gamma h/2) L),
// so one factorization serves a whole run of equal-sized steps. L-stable, and exact
// on the kernel of L, so the steady state is a fixed point for any step size.
class TrBdf2 {
  public:
    explicit TrBdf2(const SparseMatrix& L) : L_(L), id_(L.rows(), L.cols()) {
        id_.setIdentity();
    }

    void integrate_to(Vector& y, double& t, double target, double h_floor) {
        const double dt = target - t;
        if (dt <= 0.0) return;
        const double h_target = std::max(h_floor, t / 30.0);
        const int m = std::max(1, int(std::ceil(dt / h_target)));
        const double h = dt / double(m);
        refactor(h);
        for (int s = 0; s < m; ++s) {
            const Vector ly = L_ * y;
            const Vector ygamma = lu_.solve(y + (0.5 * kGamma * h) * ly);
            if (lu_.info() != Eigen::Success)
                throw NumericalError("evolve: implicit stage solve failed at t=" +
                                     std::to_string(t));
            const Vector ynext = lu_.solve(kA1 * ygamma - kA2 * y);
            if (lu_.info() != Eigen::Success)
                throw NumericalError("evolve: implicit stage solve failed at t=" +
                                     std::to_string(t));
            y = ynext;
        }
        t = target;
    }

  private:
    void refactor(double h) {
        if (factored_ && std::abs(h - h_cached_) <= 1e-12 * h) return;
        SparseMatrix M = id_ - Complex(0.5 * kGamma * h) * L_;
        M.makeCompressed();
        lu_.compute(M);
        if (lu_.info() != Eigen::Success)
            throw NumericalError("evolve: implicit matrix factorization failed");
        factored_ = true;
        h_cached_ = h;
    }

    static constexpr double kGamma = 2.0 - 1.4142135623730951;
    // y_{n+1} = a1 y_gamma - a2 y_n with a1 = 1/(gamma(2-gamma)), a2 = (1-gamma)^2/(gamma(2-gamma)).
    static constexpr double kA1 = 1.2071067811865475;
    static constexpr double kA2 = 0.20710678118654752;

    const SparseMatrix& L_;
    SparseMatrix id_;
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
    bool factored_ = false;
    double h_cached_ = 0.0;
};

}  // namespace

void evolve_observed(const DensityMatrix& rho0, const Liouvillian& L,
                     const std::vector<double>& times, const SampleCallback& on_sample,
                     const EvolveOptions& opts) {
    if (rho0.layout != L.layout) throw ConfigError("evolve: state/Liouvillian layout mismatch");
    if (opts.validate) validate_density_matrix(rho0, 1e-10, 1e-10, 1e-8, "evolve: initial state");
    if (times.empty()) return;
    if (times.front() != 0.0) throw ConfigError("evolve: times must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (times[k] <= times[k - 1])
            throw ConfigError("evolve: times must increase strictly");

    const Index D = L.dim;
    Vector y = vec(rho0.mat);

    auto emit = [&](double t) {
        DensityMatrix rho{rho0.layout, unvec(y, D)};
        check_sample(rho, t, opts);
        on_sample(t, rho);
    };

    emit(times.front());

    const bool use_implicit_only = opts.method == EvolveOptions::Method::trbdf2;
    const bool use_explicit_only = opts.method == EvolveOptions::Method::rk45;
    const double switch_t =
        use_implicit_only ? 0.0 : (use_explicit_only ? times.back() : opts.stiff_threshold);

    Rk45 rk(L.matrix, opts.rtol, opts.atol);
    Vector k1 = L.matrix * y;
    double t = 0.0;
    std::size_t k = 1;
    for (; k < times.size() && times[k] <= switch_t; ++k) {
        rk.integrate_to(y, t, times[k], k1);
        emit(times[k]);
    }

    if (k < times.size()) {
        // Bridge to the first implicit sample with the explicit integrator so the
        // implicit ladder starts from an accurate transient state.
        if (!use_implicit_only && t < switch_t) {
            rk.integrate_to(y, t, switch_t, k1);
        }
        TrBdf2 ib(L.matrix);
        const double h_floor = use_implicit_only ? 0.05 : 0.5;
        for (; k < times.size(); ++k) {
            ib.integrate_to(y, t, times[k], h_floor);
            emit(times[k]);
        }
    }
}

Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& L,
                  const std::vector<double>& times, const EvolveOptions& opts) {
    Trajectory traj;
    traj.times.reserve(times.size());
    traj.states.reserve(times.size());
    evolve_observed(rho0, L, times,
                    [&traj](double t, const DensityMatrix& rho) {
                        traj.times.push_back(t);
                        traj.states.push_back(rho);
                    },
                    opts);
    return traj;
}

}  // namespace phonoline
