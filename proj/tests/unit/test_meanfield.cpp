#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "qhybrid/meanfield.hpp"

using namespace qhybrid;
using std::numbers::pi;

namespace {

PhysicalParams lab_point() {
    PhysicalParams p;
    p.kappa = pi * 1e7;
    p.omega_m = 2 * pi * 1e7;
    p.gamma_m = 2 * pi * 1e2;
    p.gamma_at = pi * 1e7;
    p.gamma_lc = 2 * pi * 1e2;
    p.omega_lc = 2 * pi * 1e7;
    p.g_at_eff = 1.2 * pi * 1e7;
    p.delta_cav = 2.0 * p.omega_m;
    p.delta_at = -2.5 * p.omega_m;
    p.temperature = 0.01;
    return p;
}

// A point where the LC circuit feeds back on the mirror through a DC bias.
PhysicalParams biased_point() {
    PhysicalParams p = lab_point();
    p.dc_bias_voltage = 1e-6;
    p.g_lc_bare = 1e-3 * p.omega_m;
    return p;
}

// Drive detuned by one mechanical frequency: the radiation-pressure shift pulls
// the cavity through resonance and the map is steep on the way to its root.
PhysicalParams near_resonant_point() {
    PhysicalParams p = lab_point();
    p.delta_cav = p.omega_m;
    return p;
}

}  // namespace

TEST_CASE("undriven, unbiased system has the trivial fixed point") {
    PhysicalParams p = lab_point();
    p.laser_power = 0.0;
    const SteadyStateResult r = solve_steady_state(p);
    CHECK(r.state.a_s == std::complex<double>{});
    CHECK(r.state.c_s == std::complex<double>{});
    CHECK(r.state.q_s == 0.0);
    CHECK(r.state.x_s == 0.0);
    CHECK(r.report.converged);
    CHECK(verify_fixed_point(p, r.state) == 0.0);
}

TEST_CASE("decoupled cavity-atom system matches the closed form") {
    PhysicalParams p = lab_point();
    p.mirror_mass = std::numeric_limits<double>::infinity();  // G_om = 0
    const SteadyStateResult r = solve_steady_state(p);
    const std::complex<double> chi(p.gamma_at, p.delta_at);
    const std::complex<double> expected =
        drive_amplitude(p) / (std::complex<double>(p.kappa, p.delta_cav) + p.g_at_eff * p.g_at_eff / chi);
    CHECK(std::abs(r.state.a_s - expected) <= 1e-14 * std::abs(expected));
    CHECK(r.report.iterations == 1);
}

TEST_CASE("lab inputs converge and satisfy all relations on back-substitution") {
    const PhysicalParams p = lab_point();
    const SteadyStateResult r = solve_steady_state(p);
    CHECK(r.report.converged);
    CHECK(r.report.residual <= 1e-10);
    CHECK(verify_fixed_point(p, r.state) <= 1e-10);
    CHECK(r.state.p_s == 0.0);
    CHECK(r.state.phi_s == 0.0);
    CHECK(r.state.x_s > 0.0);
}

TEST_CASE("steep map converges well inside the iteration budget") {
    const SteadyStateResult r = solve_steady_state(near_resonant_point());
    CHECK(r.report.converged);
    CHECK(r.report.iterations < 1000);
}

TEST_CASE("biased inputs converge with a nonzero charge") {
    const PhysicalParams p = biased_point();
    const SteadyStateResult r = solve_steady_state(p);
    CHECK(r.state.q_s > 0.0);
    CHECK(verify_fixed_point(p, r.state) <= 1e-10);
}

TEST_CASE("atomic amplitude follows the cavity amplitude exactly") {
    const PhysicalParams p = lab_point();
    const SteadyState s = solve_steady_state(p).state;
    const std::complex<double> c = std::complex<double>(0.0, -p.g_at_eff) * s.a_s /
                                   std::complex<double>(p.gamma_at, p.delta_at);
    CHECK(s.c_s == c);
}

TEST_CASE("cavity amplitude grows with the drive") {
    PhysicalParams p = lab_point();
    double prev = 0.0;
    for (double power : {1e-3, 5e-3, 1e-2, 2e-2, 35e-3}) {
        p.laser_power = power;
        const double a = std::abs(solve_steady_state(p).state.a_s);
        CHECK(a > prev);
        prev = a;
    }
}

TEST_CASE("fixed-point and Newton routes agree") {
    for (const PhysicalParams& p : {lab_point(), biased_point(), near_resonant_point()}) {
        for (double damping : {1.0, 0.5, 0.1}) {
            MeanFieldOptions opt;
            opt.damping = damping;
            const double x_fp = solve_steady_state(p, opt).state.x_s;
            const double x_nt = solve_steady_state_newton(p, 0.0).state.x_s;
            CHECK(std::abs(x_fp - x_nt) <= 1e-8 * std::abs(x_nt));
        }
    }
}

TEST_CASE("residual of a perturbed fixed point grows linearly") {
    const PhysicalParams p = lab_point();
    const SteadyState s = solve_steady_state(p).state;
    auto residual_at = [&](double eps) {
        SteadyState t = s;
        t.x_s += eps * s.x_s;
        return verify_fixed_point(p, t);
    };
    const double r1 = residual_at(1e-6);
    const double r2 = residual_at(2e-6);
    const double r4 = residual_at(4e-6);
    CHECK(r1 > 0.0);
    CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(r4 / r2 == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("root scan finds the continuation root") {
    const PhysicalParams p = lab_point();
    const double x = solve_steady_state(p).state.x_s;
    const auto roots = scan_roots(p, 0.0, 4.0 * x, 400);
    REQUIRE(!roots.empty());
    bool found = false;
    for (double r : roots) found = found || std::abs(r - x) <= 1e-8 * x;
    CHECK(found);
    CHECK_THROWS_AS(scan_roots(p, 1.0, 0.0, 10), ContractError);
}

TEST_CASE("frequency collapse is reported as such") {
    PhysicalParams p = lab_point();
    p.g_lc_bare = -1e-3 * p.omega_lc;  // omega_lc + 2 G_LC x_s crosses 0 near x_s = 500
    CHECK_THROWS_AS(solve_steady_state(p), FrequencyCollapse);
    try {
        solve_steady_state(p);
    } catch (const FrequencyCollapse& e) {
        CHECK(std::string(e.what()).find("frequency collapse") != std::string::npos);
    }
}

TEST_CASE("iteration cap produces a failure carrying the last iterate") {
    MeanFieldOptions opt;
    opt.max_iterations = 2;
    try {
        solve_steady_state(lab_point(), opt);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK_FALSE(e.last().report.converged);
        CHECK(e.last().report.iterations >= opt.max_iterations);
    }
}

TEST_CASE("solver options are checked") {
    MeanFieldOptions opt;
    opt.damping = 0.0;
    CHECK_THROWS_AS(solve_steady_state(lab_point(), opt), ContractError);
    opt.damping = 1.0;
    opt.tolerance = 0.0;
    CHECK_THROWS_AS(solve_steady_state(lab_point(), opt), ContractError);
}
