#include <benchmark/benchmark.h>

#include "phonoline/entanglement.hpp"
#include "phonoline/evolve.hpp"
#include "phonoline/metrics.hpp"
#include "phonoline/model.hpp"
#include "phonoline/steady.hpp"

using namespace phonoline;

namespace {

SystemParams pair_params(Index d) {
    SystemParams p;
    p.n_spins = 2;
    p.d = d;
    p.delta = {0.0, 0.0};
    p.g = {0.33, 0.33};
    p.omega_drive = {0.0, 0.0};
    p.gamma_b = 1e-3;
    p.gamma_s = 1e-5;
    p.gamma_phi = 1e-5;
    p.nbar_b = 0.003;
    return p;
}

DensityMatrix pair_initial(const SystemParams& p) {
    const double r = 1.0 / std::sqrt(2.0);
    return joint_initial_state({spin_superposition(r, r), spin_superposition(r, r)},
                               thermal_state(p.d, p.nbar_b));
}

}  // namespace

static void LiouvillianApply(benchmark::State& state) {
    const SystemParams p = pair_params(state.range());
    const Liouvillian L = build_liouvillian(build_hamiltonian(p), build_dissipators(p));
    Vector v = vec(pair_initial(p).mat);
    for (auto _ : state) {
        v = phonoline::apply(L, v);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetComplexityN(L.dim);
}
BENCHMARK(LiouvillianApply)->Arg(8)->Arg(15)->Arg(20)->Complexity();

static void EvolveUnitInterval(benchmark::State& state) {
    const SystemParams p = pair_params(state.range());
    const Liouvillian L = build_liouvillian(build_hamiltonian(p), build_dissipators(p));
    const DensityMatrix rho0 = pair_initial(p);
    EvolveOptions opts;
    opts.validate = false;
    for (auto _ : state) {
        Trajectory traj = evolve(rho0, L, {0.0, 1.0}, opts);
        benchmark::DoNotOptimize(traj.states.back().mat.data());
    }
}
BENCHMARK(EvolveUnitInterval)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

static void SteadySolve(benchmark::State& state) {
    SystemParams p = pair_params(state.range());
    p.omega_drive = {0.61, 0.61};
    p.delta = {-0.98, -0.98};
    const Liouvillian L = build_liouvillian(build_hamiltonian(p), build_dissipators(p));
    SteadyOptions opts;
    opts.check_uniqueness = false;
    for (auto _ : state) {
        DensityMatrix rho = steady_state(L, opts);
        benchmark::DoNotOptimize(rho.mat.data());
    }
}
BENCHMARK(SteadySolve)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void WignerPoint(benchmark::State& state) {
    const DensityMatrix rho = thermal_state(state.range(), 0.25);
    const Complex alpha(1.3, -0.7);
    for (auto _ : state) {
        double w = wigner_at(rho, alpha);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(WignerPoint)->Arg(15)->Arg(30);

static void DiscordX(benchmark::State& state) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 0.35;
    m(1, 1) = 0.15;
    m(2, 2) = 0.15;
    m(3, 3) = 0.35;
    m(0, 3) = m(3, 0) = 0.20;
    m(1, 2) = m(2, 1) = 0.05;
    const DensityMatrix rho{Layout({2, 2}), m};
    for (auto _ : state) {
        double q = discord_x(rho);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(DiscordX);

BENCHMARK_MAIN();
