#include "phonoline/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <thread>

#include "phonoline/circuit.hpp"
#include "phonoline/csv.hpp"
#include "phonoline/entanglement.hpp"
#include "phonoline/evolve.hpp"
#include "phonoline/metrics.hpp"
#include "phonoline/steady.hpp"

namespace phonoline {

namespace {

ScenarioConfig with_overrides(const ScenarioConfig& cfg, const RunOptions& opt) {
    ScenarioConfig out = cfg;
    if (opt.truncation_override) out.params.d = *opt.truncation_override;
    if (opt.samples_override) {
        if (out.time.log_scale) {
            out.time.log_points = std::max<Index>(1, *opt.samples_override);
        } else {
            out.time.samples = *opt.samples_override;
            out.time.samples_per_unit.reset();
        }
    }
    if (opt.sweep_points_override && out.sweep) {
        const Index p = std::max<Index>(2, *opt.sweep_points_override);
        out.sweep->x.points = p;
        out.sweep->y.points = p;
    }
    out.validate();
    return out;
}

std::string join_path(const std::string& dir, const std::string& file) {
    if (dir.empty() || dir == ".") return file;
    return dir.back() == '/' ? dir + file : dir + "/" + file;
}

std::string stem_of(const std::string& file) {
    const auto dot = file.rfind('.');
    return dot == std::string::npos ? file : file.substr(0, dot);
}

// Evaluates the requested observables on a full-system state.
class Evaluator {
  public:
    Evaluator(const SystemParams& params, const std::vector<ObservableSpec>& obs)
        : params_(params), obs_(obs) {
        for (const ObservableSpec& ob : obs_) {
            switch (ob.kind) {
                case ObservableKind::fock_fidelity:
                    header_.push_back("fock_fidelity_" + std::to_string(ob.fock_n));
                    break;
                case ObservableKind::fock_distribution:
                    for (Index n = 0; n < params_.d; ++n)
                        header_.push_back("p" + std::to_string(n));
                    break;
                case ObservableKind::populations:
                    for (int j = 1; j <= params_.n_spins; ++j)
                        header_.push_back("pop_spin" + std::to_string(j));
                    header_.push_back("pop_phonon");
                    break;
                case ObservableKind::wigner:
                    break;  // emitted as a side file, not a column
                default:
                    header_.push_back(ob.token);
            }
        }
    }

    const std::vector<std::string>& header() const { return header_; }

    std::vector<double> eval(const DensityMatrix& rho) const {
        std::vector<double> out;
        out.reserve(header_.size());
        std::optional<DensityMatrix> phonon, spins;
        const auto phonon_state = [&]() -> const DensityMatrix& {
            if (!phonon) phonon = partial_trace(rho, {rho.layout.sites() - 1});
            return *phonon;
        };
        const auto spin_state = [&]() -> const DensityMatrix& {
            if (!spins) {
                std::vector<std::size_t> keep;
                for (int j = 0; j < params_.n_spins; ++j) keep.push_back(std::size_t(j));
                spins = partial_trace(rho, keep);
            }
            return *spins;
        };
        for (const ObservableSpec& ob : obs_) {
            switch (ob.kind) {
                case ObservableKind::fock_fidelity:
                    out.push_back(fock_fidelity(phonon_state(), ob.fock_n));
                    break;
                case ObservableKind::qubit_fidelity: {
                    Vector target = Vector::Zero(params_.d);
                    target(0) = target(1) = 1.0 / std::sqrt(2.0);
                    out.push_back(pure_target_fidelity(phonon_state(), target));
                    break;
                }
                case ObservableKind::g2:
                    try {
                        out.push_back(g2_zero(phonon_state()));
                    } catch (const NumericalError&) {
                        // Vacuum: undefined, reported distinctly as nan.
                        out.push_back(std::numeric_limits<double>::quiet_NaN());
                    }
                    break;
                case ObservableKind::fock_distribution:
                    for (Index n = 0; n < params_.d; ++n)
                        out.push_back(phonon_state().mat(n, n).real());
                    break;
                case ObservableKind::wigner:
                    break;
                case ObservableKind::concurrence:
                    out.push_back(concurrence(spin_state()));
                    break;
                case ObservableKind::discord:
                    out.push_back(discord_x(spin_state()));
                    break;
                case ObservableKind::purity:
                    out.push_back(rho.mat.squaredNorm());
                    break;
                case ObservableKind::populations: {
                    for (int j = 0; j < params_.n_spins; ++j) {
                        const DensityMatrix sj = partial_trace(rho, {std::size_t(j)});
                        out.push_back(sj.mat(0, 0).real());
                    }
                    double occ = 0.0;
                    for (Index n = 0; n < params_.d; ++n)
                        occ += double(n) * phonon_state().mat(n, n).real();
                    out.push_back(occ);
                    break;
                }
            }
        }
        return out;
    }

  private:
    SystemParams params_;
    std::vector<ObservableSpec> obs_;
    std::vector<std::string> header_;
};

struct SamplePlan {
    std::vector<double> times;
    std::vector<bool> is_grid;
    Index wigner_at = -1;  // index into times, -1 when absent
};

SamplePlan plan_samples(const ScenarioConfig& cfg) {
    SamplePlan plan;
    plan.times = cfg.time.times();
    plan.is_grid.assign(plan.times.size(), true);
    if (!cfg.wigner || plan.times.empty()) return plan;
    const double tw = cfg.wigner->at;
    const double tol = 1e-9 * std::max(1.0, std::abs(tw));
    for (std::size_t i = 0; i < plan.times.size(); ++i)
        if (std::abs(plan.times[i] - tw) <= tol) {
            plan.wigner_at = Index(i);
            return plan;
        }
    const auto at = std::upper_bound(plan.times.begin(), plan.times.end(), tw);
    const std::size_t pos = std::size_t(at - plan.times.begin());
    plan.times.insert(at, tw);
    plan.is_grid.insert(plan.is_grid.begin() + std::ptrdiff_t(pos), false);
    plan.wigner_at = Index(pos);
    return plan;
}

std::vector<std::string> run_timeseries(const ScenarioConfig& cfg, const RunOptions& opt) {
    const SystemParams& params = cfg.params;
    const Evaluator eval(params, cfg.observables);

    std::vector<std::string> header{"t"};
    header.insert(header.end(), eval.header().begin(), eval.header().end());
    const std::string out_path = join_path(opt.out_dir, cfg.output);
    CsvWriter csv(out_path, header);
    std::vector<std::string> written{out_path};

    const SamplePlan plan = plan_samples(cfg);
    if (plan.times.empty()) {
        csv.close();
        return written;
    }

    const DensityMatrix rho0 = initial_state(cfg, params);
    const Liouvillian L = build_liouvillian(build_hamiltonian(params), build_dissipators(params));

    std::optional<WignerGrid> wigner_grid;
    Index at = 0;
    evolve_observed(rho0, L, plan.times, [&](double t, const DensityMatrix& rho) {
        if (at == plan.wigner_at) {
            const DensityMatrix phonon = partial_trace(rho, {rho.layout.sites() - 1});
            wigner_grid = wigner(phonon, cfg.wigner->grid);
        }
        if (plan.is_grid[std::size_t(at)]) {
            std::vector<double> row{t};
            const std::vector<double> vals = eval.eval(rho);
            row.insert(row.end(), vals.begin(), vals.end());
            csv.row(row);
        }
        ++at;
    });
    csv.close();

    if (cfg.wigner) {
        const std::string wpath =
            join_path(opt.out_dir, stem_of(cfg.output) + "_wigner.csv");
        CsvWriter wcsv(wpath, {"re", "im", "wigner"});
        for (std::size_t i = 0; i < wigner_grid->re_axis.size(); ++i)
            for (std::size_t j = 0; j < wigner_grid->im_axis.size(); ++j)
                wcsv.row({wigner_grid->re_axis[i], wigner_grid->im_axis[j],
                          wigner_grid->values(Eigen::Index(i), Eigen::Index(j))});
        wcsv.close();
        written.push_back(wpath);
    }
    return written;
}

std::vector<std::string> run_ibm_compare(const ScenarioConfig& cfg, const RunOptions& opt) {
    const SystemParams& params = cfg.params;
    const BellDiagonalSpec bd = *cfg.initial.bell_diagonal;
    const double g0 = params.g[0];

    const std::string out_path = join_path(opt.out_dir, cfg.output);
    CsvWriter csv(out_path, {"t", "fidelity", "discord_protocol", "discord_me"});

    const std::vector<double> times = cfg.time.times();
    if (times.empty()) {
        csv.close();
        return {out_path};
    }

    const DensityMatrix rho0 = initial_state(cfg, params);
    const Liouvillian L = build_liouvillian(build_hamiltonian(params), build_dissipators(params));

    evolve_observed(rho0, L, times, [&](double t, const DensityMatrix& rho) {
        DensityMatrix me_spins = partial_trace(rho, {0, 1});
        me_spins.mat /= me_spins.mat.trace();
        const DensityMatrix qc = run_protocol(bd, t, g0, params.nbar_b, params.gamma_s);
        csv.row({t, state_fidelity(qc, me_spins), discord_x(qc), discord_x(me_spins)});
    });
    csv.close();
    return {out_path};
}

}  // namespace

DensityMatrix initial_state(const ScenarioConfig& cfg, const SystemParams& params) {
    DensityMatrix phonon;
    if (cfg.initial.phonon_fock) {
        const Vector f = fock_state(params.d, cfg.initial.fock_n);
        phonon.layout = Layout{{params.d}};
        phonon.mat = f * f.adjoint();
    } else {
        phonon = thermal_state(params.d, cfg.initial.thermal_nbar.value_or(params.nbar_b));
    }

    if (cfg.initial.bell_diagonal) {
        const DensityMatrix spins = bd_state(*cfg.initial.bell_diagonal);
        DensityMatrix full;
        full.layout = params.layout();
        full.mat = kron(spins.mat, phonon.mat);
        validate_density_matrix(full, 1e-10, 1e-10, 1e-8, "initial state");
        return full;
    }

    std::vector<DensityMatrix> spin_states;
    for (int j = 0; j < params.n_spins; ++j) {
        const SpinInit s = cfg.initial.ground ? SpinInit{1.0, 0.0}
                                              : cfg.initial.spins[std::size_t(j)];
        spin_states.push_back(spin_superposition(s.alpha, s.beta));
    }
    return joint_initial_state(spin_states, phonon);
}

std::vector<std::string> run_sweep(const ScenarioConfig& base, const RunOptions& opt) {
    const ScenarioConfig cfg = with_overrides(base, opt);
    if (cfg.kind != RunKind::sweep) throw ConfigError("run_sweep: config is not a sweep");
    const SweepSpec& sw = *cfg.sweep;
    const std::vector<double> xs = sw.x.values();
    const std::vector<double> ys = sw.y.values();
    const Evaluator eval(cfg.params, {sw.observable});

    const std::size_t cells = xs.size() * ys.size();
    std::vector<double> result(cells, std::numeric_limits<double>::quiet_NaN());
    std::atomic<std::size_t> failures{0};
    std::atomic<std::size_t> next{0};

    const auto worker = [&]() {
        for (;;) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= cells) return;
            const std::size_t ix = cell / ys.size(), iy = cell % ys.size();
            try {
                SystemParams p = cfg.params;
                apply_sweep_param(p, sw.x.param, xs[ix]);
                apply_sweep_param(p, sw.y.param, ys[iy]);
                p.validate();
                const Liouvillian L =
                    build_liouvillian(build_hamiltonian(p), build_dissipators(p));
                DensityMatrix state;
                if (sw.steady) {
                    SteadyOptions sopt;
                    sopt.check_uniqueness = false;
                    state = steady_state(L, sopt);
                } else {
                    const DensityMatrix rho0 = initial_state(cfg, p);
                    state = evolve(rho0, L, {0.0, sw.t_final}).states.back();
                }
                result[cell] = eval.eval(state).at(0);
            } catch (const std::exception&) {
                failures.fetch_add(1);  // NaN sentinel already in place
            }
        }
    };

    const int nthreads = std::max(1, opt.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    const std::string out_path = join_path(opt.out_dir, cfg.output);
    CsvWriter csv(out_path, {sw.x.param, sw.y.param, eval.header().at(0)});
    for (std::size_t ix = 0; ix < xs.size(); ++ix)
        for (std::size_t iy = 0; iy < ys.size(); ++iy)
            csv.row({xs[ix], ys[iy], result[ix * ys.size() + iy]});
    csv.close();
    if (failures.load() > 0)
        std::cerr << "sweep " << cfg.name << ": " << failures.load() << " of " << cells
                  << " cells failed (recorded as nan)\n";
    return {out_path};
}

std::vector<std::string> run_scenario(const ScenarioConfig& base, const RunOptions& opt) {
    const ScenarioConfig cfg = with_overrides(base, opt);
    switch (cfg.kind) {
        case RunKind::sweep:
            return run_sweep(base, opt);
        case RunKind::ibm_compare:
            return run_ibm_compare(cfg, opt);
        case RunKind::timeseries:
            break;
    }
    return run_timeseries(cfg, opt);
}

}  // namespace phonoline
