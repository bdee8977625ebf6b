#include <benchmark/benchmark.h>

#include <numbers>

#include "qhybrid/entanglement.hpp"
#include "qhybrid/lyapunov.hpp"
#include "qhybrid/meanfield.hpp"
#include "qhybrid/pipeline.hpp"
#include "qhybrid/routh_hurwitz.hpp"
#include "qhybrid/sweep.hpp"

using namespace qhybrid;
using std::numbers::pi;

namespace {

ParameterSet working_point() {
    ParameterSet s;
    s.mode = Mode::Effective;
    EffectiveParams& p = s.effective;
    p.omega_m = 2 * pi * 1e7;
    p.kappa = pi * 1e7;
    p.gamma_m = 2 * pi * 1e2;
    p.gamma_at = pi * 1e7;
    p.gamma_lc = 2 * pi * 1e2;
    p.g_at_eff = 1.2 * pi * 1e7;
    p.delta_cav_eff = p.omega_m;
    p.omega_lc_eff = p.omega_m;
    p.g_om_eff = 0.6 * p.omega_m;
    p.g_lc_eff = 0.4 * p.omega_m;
    p.delta_at = -2.5 * p.omega_m;
    s.temperature = 0.01;
    return s;
}

PhysicalParams lab_point() {
    PhysicalParams p;
    p.kappa = pi * 1e7;
    p.omega_m = 2 * pi * 1e7;
    p.gamma_m = 2 * pi * 1e2;
    p.gamma_at = pi * 1e7;
    p.gamma_lc = 2 * pi * 1e2;
    p.omega_lc = 2 * pi * 1e7;
    p.g_at_eff = 1.2 * pi * 1e7;
    p.delta_cav = 2 * p.omega_m;
    p.delta_at = -2.5 * p.omega_m;
    p.temperature = 0.01;
    return p;
}

void BM_SteadyState(benchmark::State& state) {
    const PhysicalParams p = lab_point();
    for (auto _ : state) benchmark::DoNotOptimize(solve_steady_state(p));
}
BENCHMARK(BM_SteadyState);

void BM_Stability(benchmark::State& state) {
    const Matrix8 a = build_drift(working_point().resolved_effective());
    for (auto _ : state) benchmark::DoNotOptimize(stability(a));
}
BENCHMARK(BM_Stability);

void BM_RouthHurwitz(benchmark::State& state) {
    const Matrix8 a = build_drift(working_point().resolved_effective());
    for (auto _ : state) benchmark::DoNotOptimize(routh_hurwitz_stability(a));
}
BENCHMARK(BM_RouthHurwitz);

void BM_Lyapunov(benchmark::State& state) {
    const EffectiveParams e = working_point().resolved_effective();
    const Matrix8 a = build_drift(e);
    const Matrix8 d = build_diffusion(e);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(a, d));
}
BENCHMARK(BM_Lyapunov);

void BM_LogNegativity(benchmark::State& state) {
    const EffectiveParams e = working_point().resolved_effective();
    const CovarianceMatrix v = solve_lyapunov(build_drift(e), build_diffusion(e));
    const ReducedCovariance rc = extract_bipartition(v, parse_bipartition("MO-AE"));
    for (auto _ : state) benchmark::DoNotOptimize(log_negativity(rc));
}
BENCHMARK(BM_LogNegativity);

void BM_Point(benchmark::State& state) {
    const ParameterSet p = working_point();
    const auto pairs = all_bipartitions();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_point(p, pairs));
}
BENCHMARK(BM_Point);

void BM_Sweep(benchmark::State& state) {
    SweepSpec spec;
    spec.base = working_point();
    spec.axis1 = Axis{"g_om_eff/omega_m", 0.0, 1.0, static_cast<int>(state.range(0))};
    spec.axis2 = Axis{"g_lc_eff/omega_m", 0.0, 1.2, static_cast<int>(state.range(0))};
    spec.bipartitions = macroscopic_bipartitions();
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, static_cast<unsigned>(state.range(1))));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Sweep)->Args({20, 1})->Args({20, 4})->Args({50, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
