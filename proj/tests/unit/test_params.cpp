#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qhybrid/constants.hpp"
#include "qhybrid/errors.hpp"
#include "qhybrid/meanfield.hpp"
#include "qhybrid/params.hpp"

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
    p.delta_cav = 2 * pi * 1e7;
    p.delta_at = -2.5 * 2 * pi * 1e7;
    p.temperature = 0.01;
    return p;
}

}  // namespace

TEST_CASE("thermal occupation vanishes at zero temperature") {
    CHECK(thermal_occupation(2 * pi * 1e7, 0.0) == 0.0);
}

TEST_CASE("thermal occupation equals one when hbar omega = k_B T ln 2") {
    const double omega = 2 * pi * 1e7;
    const double t = constants::hbar * omega / (constants::boltzmann * std::log(2.0));
    CHECK(thermal_occupation(omega, t) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("thermal occupation matches the frozen reference value") {
    CHECK(thermal_occupation(2 * pi * 1e7, 0.01) ==
          doctest::Approx(qtest::kNbarOmega2pi1e7T10mK).epsilon(1e-12));
}

TEST_CASE("thermal occupation is monotone in temperature and frequency") {
    const double omegas[] = {1e6, 1e7, 6e7, 3e8};
    const double temps[] = {1e-4, 1e-3, 1e-2, 0.1, 0.4, 4.0};
    for (double w : omegas) {
        for (int k = 1; k < 6; ++k) {
            CHECK(thermal_occupation(w, temps[k]) > thermal_occupation(w, temps[k - 1]));
        }
    }
    for (double t : temps) {
        for (int k = 1; k < 4; ++k) {
            CHECK(thermal_occupation(omegas[k], t) < thermal_occupation(omegas[k - 1], t));
        }
    }
}

TEST_CASE("thermal occupation rejects a non-positive frequency or negative temperature") {
    CHECK_THROWS_AS(thermal_occupation(0.0, 0.01), ContractError);
    CHECK_THROWS_AS(thermal_occupation(-1.0, 0.01), ContractError);
    CHECK_THROWS_AS(thermal_occupation(1e7, -1e-3), ContractError);
}

TEST_CASE("drive amplitude matches the frozen reference value") {
    const PhysicalParams p = lab_point();
    CHECK(drive_amplitude(p) == doctest::Approx(qtest::kDriveP35mWKappaPi1e7L1064).epsilon(1e-12));
    CHECK(laser_frequency(p) == doctest::Approx(2 * pi * constants::speed_of_light / 1064e-9).epsilon(1e-15));
}

TEST_CASE("drive amplitude follows the square-root law in power") {
    PhysicalParams p = lab_point();
    const double e1 = drive_amplitude(p);
    p.laser_power *= 4.0;
    CHECK(drive_amplitude(p) == doctest::Approx(2.0 * e1).epsilon(1e-14));
    p.laser_power = 0.0;
    CHECK(drive_amplitude(p) == 0.0);
}

TEST_CASE("effective parameters with a trivial steady state keep the bare frequencies") {
    PhysicalParams p = lab_point();
    p.g_lc_bare = 0.3 * p.omega_m;
    const EffectiveParams e = effective_from_physical(p, SteadyState{});
    CHECK(e.g_om_eff == 0.0);
    CHECK(e.g_lc_eff == 0.0);
    CHECK(e.delta_cav_eff == p.delta_cav);
    CHECK(e.omega_lc_eff == p.omega_lc);
    CHECK(e.g_at_eff == p.g_at_eff);
    CHECK(e.nbar_m == doctest::Approx(qtest::kNbarOmega2pi1e7T10mK).epsilon(1e-12));
}

TEST_CASE("effective optomechanical coupling is linear in the cavity amplitude") {
    const PhysicalParams p = lab_point();
    SteadyState s;
    s.a_s = {3.0, 4.0};
    const double g1 = effective_from_physical(p, s).g_om_eff;
    s.a_s *= 2.5;
    CHECK(effective_from_physical(p, s).g_om_eff == doctest::Approx(2.5 * g1).epsilon(1e-14));
    CHECK(g1 == doctest::Approx(std::sqrt(2.0) * 5.0 * optomechanical_coupling(p)).epsilon(1e-14));
}

TEST_CASE("effective parameters are a pure function of their inputs") {
    const PhysicalParams p = lab_point();
    const SteadyStateResult r = solve_steady_state(p);
    const EffectiveParams a = effective_from_physical(p, r.state);
    const EffectiveParams b = effective_from_physical(p, r.state);
    CHECK(a.g_om_eff == b.g_om_eff);
    CHECK(a.delta_cav_eff == b.delta_cav_eff);
    CHECK(a.omega_lc_eff == b.omega_lc_eff);
}

TEST_CASE("physical validation names the offending field") {
    PhysicalParams p = lab_point();
    p.kappa = -1.0;
    try {
        p.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "kappa");
    }
}

TEST_CASE("parameter set resolves occupations from temperature") {
    ParameterSet s;
    s.mode = Mode::Effective;
    s.effective = qtest::working_point(0.6, 0.4, -2.5);
    s.effective.nbar_m = 0.0;
    s.effective.nbar_lc = 0.0;
    s.temperature = 0.01;
    const EffectiveParams e = s.resolved_effective();
    CHECK(e.nbar_m == doctest::Approx(qtest::kNbarOmega2pi1e7T10mK).epsilon(1e-12));
    CHECK(e.nbar_lc == doctest::Approx(qtest::kNbarOmega2pi1e7T10mK).epsilon(1e-12));

    s.set("temperature_lc", 0.0);
    CHECK(s.resolved_effective().nbar_lc == 0.0);
}

TEST_CASE("parameter set rejects names from the other mode") {
    ParameterSet s;
    s.mode = Mode::Effective;
    CHECK_THROWS_AS(s.set("laser_power", 1.0), ConfigError);
    s.mode = Mode::Physical;
    CHECK_THROWS_AS(s.set("g_om_eff", 1.0), ConfigError);
    s.set("laser_power", 2e-3);
    CHECK(s.get("laser_power") == 2e-3);
}
