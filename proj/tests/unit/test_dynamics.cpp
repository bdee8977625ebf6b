#include <doctest.h>

#include <set>
#include <utility>

#include "oracles.hpp"
#include "qhybrid/dynamics.hpp"
#include "qhybrid/errors.hpp"
#include "qhybrid/lyapunov.hpp"
#include "qhybrid/routh_hurwitz.hpp"

using namespace qhybrid;

namespace {

// Entries that may be nonzero for some parameter set.
const std::set<std::pair<int, int>> kCoupled{
    {0, 1}, {1, 0}, {1, 1}, {1, 2}, {1, 6}, {2, 2}, {2, 3}, {2, 5}, {3, 0}, {3, 2}, {3, 3}, {3, 4},
    {4, 3}, {4, 4}, {4, 5}, {5, 2}, {5, 4}, {5, 5}, {6, 7}, {7, 0}, {7, 6}, {7, 7}};

}  // namespace

TEST_CASE("drift matrix keeps its structural zeros") {
    qtest::Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const EffectiveParams p =
            qtest::working_point(rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(-4, 4));
        const Matrix8 a = build_drift(p);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (!kCoupled.count({i, j})) CHECK(a(i, j) == 0.0);
    }
}

TEST_CASE("drift entries at the working point") {
    const EffectiveParams p = qtest::working_point(0.6, 0.4, -2.5);
    const Matrix8 a = build_drift(p);
    CHECK(a(1, 2) == doctest::Approx(0.6 * p.omega_m).epsilon(1e-15));
    CHECK(a(1, 6) == doctest::Approx(-0.4 * p.omega_m).epsilon(1e-15));
    CHECK(a(3, 0) == a(1, 2));
    CHECK(a(7, 0) == a(1, 6));
    CHECK(a(0, 1) == p.omega_m);
    CHECK(a(1, 0) == -p.omega_m);
    CHECK(a(6, 7) == p.omega_lc_eff);
    CHECK(a(7, 6) == -p.omega_lc_eff);
    CHECK(a(2, 3) == p.delta_cav_eff);
    CHECK(a(3, 2) == -p.delta_cav_eff);
    CHECK(a(4, 5) == p.delta_at);
    CHECK(a(5, 4) == -p.delta_at);
    CHECK(a(1, 1) == -p.gamma_m);
    CHECK(a(2, 2) == -p.kappa);
    CHECK(a(3, 3) == -p.kappa);
    CHECK(a(4, 4) == -p.gamma_at);
    CHECK(a(5, 5) == -p.gamma_at);
    CHECK(a(6, 6) == 0.0);
    CHECK(a(7, 7) == -p.gamma_lc);
}

TEST_CASE("cavity-atom coupling block is antisymmetric") {
    const Matrix8 a = build_drift(qtest::working_point(0.6, 0.4, -2.5));
    CHECK(a(2, 5) == -a(5, 2));
    CHECK(a(3, 4) == -a(4, 3));
    CHECK(a(2, 5) > 0.0);
    CHECK(a(4, 3) > 0.0);
}

TEST_CASE("drift is linear in each coupling") {
    const EffectiveParams base = qtest::working_point(0.6, 0.4, -2.5);
    double EffectiveParams::*fields[] = {&EffectiveParams::g_om_eff, &EffectiveParams::g_lc_eff,
                                         &EffectiveParams::g_at_eff, &EffectiveParams::delta_at};
    for (auto f : fields) {
        EffectiveParams lo = base, mid = base, hi = base;
        lo.*f -= 1e5;
        hi.*f += 1e5;
        const Matrix8 second = build_drift(hi) - 2.0 * build_drift(mid) + build_drift(lo);
        CHECK(second.cwiseAbs().maxCoeff() <= 1e-6);
        CHECK((build_drift(hi) - build_drift(lo)).cwiseAbs().maxCoeff() > 0.0);
    }
}

TEST_CASE("diffusion matrix entries") {
    EffectiveParams p = qtest::working_point(0.6, 0.4, -2.5);
    const Matrix8 d = build_diffusion(p);
    CHECK(Matrix8(d.diagonal().asDiagonal()) == d);
    CHECK(d(0, 0) == 0.0);
    CHECK(d(1, 1) == doctest::Approx(p.gamma_m * (2 * p.nbar_m + 1)).epsilon(1e-15));
    CHECK(d(2, 2) == p.kappa);
    CHECK(d(3, 3) == p.kappa);
    CHECK(d(4, 4) == p.gamma_at);
    CHECK(d(5, 5) == p.gamma_at);
    CHECK(d(6, 6) == 0.0);
    CHECK(d(7, 7) == doctest::Approx(p.gamma_lc * (2 * p.nbar_lc + 1)).epsilon(1e-15));
    CHECK(build_diffusion(p, 0.5)(7, 7) == doctest::Approx(0.5 * d(7, 7)).epsilon(1e-15));

    p.nbar_m = p.nbar_lc = 0.0;
    const Matrix8 d0 = build_diffusion(p);
    CHECK(d0(1, 1) == p.gamma_m);
    CHECK(d0(7, 7) == p.gamma_lc);

    p.gamma_lc = 0.0;
    CHECK(build_diffusion(p)(7, 7) == 0.0);
}

TEST_CASE("bipartition labels") {
    CHECK(parse_bipartition("MO-AE") == Bipartition{Subsystem::MO, Subsystem::AE});
    CHECK(parse_bipartition("AE-LC").label() == "AE-LC");
    CHECK_THROWS_AS(parse_bipartition("MO-MO"), ContractError);
    CHECK_THROWS_AS(parse_bipartition("MO-XX"), ContractError);
    CHECK(all_bipartitions().size() == 6);
    CHECK(macroscopic_bipartitions().size() == 3);
    CHECK(first_index(Subsystem::LC) == 6);
}

TEST_CASE("stability examples") {
    SUBCASE("zero couplings are stable") {
        const StabilityReport s = stability(build_drift(qtest::working_point(0, 0, -2.5)));
        CHECK(s.stable);
        CHECK(s.max_real_eigenvalue < 0.0);
    }
    SUBCASE("zero couplings without the LC resistance are marginal") {
        EffectiveParams p = qtest::working_point(0, 0, -2.5);
        p.gamma_lc = 0.0;
        const StabilityReport s = stability(build_drift(p), p.omega_m);
        CHECK_FALSE(s.stable);
        CHECK(std::abs(s.max_real_eigenvalue) <= 1e-6 * p.omega_m);
    }
    SUBCASE("strong couplings are unstable") {
        const StabilityReport s = stability(build_drift(qtest::working_point(1.0, 1.0, -2.5)));
        CHECK_FALSE(s.stable);
        CHECK(s.max_real_eigenvalue > 0.0);
    }
    SUBCASE("eigenvalues come sorted by real part") {
        const StabilityReport s = stability(build_drift(qtest::working_point(0.6, 0.4, -2.5)));
        for (int i = 1; i < 8; ++i) CHECK(s.eigenvalues[i - 1].real() >= s.eigenvalues[i].real());
        CHECK(s.max_real_eigenvalue == s.eigenvalues[0].real());
    }
}

TEST_CASE("characteristic polynomial reproduces the trace and determinant") {
    qtest::Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        const Matrix8 a = qtest::random_stable_drift(rng, 1.0);
        const auto c = characteristic_polynomial(a, 1.0);
        REQUIRE(c.size() == 9);
        CHECK(c[0] == 1.0L);
        CHECK(static_cast<double>(c[1]) == doctest::Approx(-a.trace()).epsilon(1e-10));
        CHECK(static_cast<double>(c[8]) == doctest::Approx(a.determinant()).epsilon(1e-8));
    }
}

TEST_CASE("Routh array on known polynomials") {
    // (s+1)(s+2)(s+3)
    CHECK(routh_hurwitz({1, 6, 11, 6}).stable);
    // (s-1)(s+2)(s+3) = s^3 + 4 s^2 + s - 6
    const RouthReport r = routh_hurwitz({1, 4, 1, -6});
    CHECK_FALSE(r.stable);
    CHECK(r.sign_changes == 1);
    // s^2 + 1: roots on the imaginary axis
    const RouthReport m = routh_hurwitz({1, 0, 1});
    CHECK_FALSE(m.stable);
    CHECK(m.degenerate);
}

TEST_CASE("Routh test agrees with the spectrum on random and model matrices") {
    qtest::Rng rng(7);
    for (int k = 0; k < 200; ++k) {
        Matrix8 a = qtest::random_stable_drift(rng, 1.0);
        if (k % 2 == 1) a.diagonal().array() += rng.uniform(0.0, 2.0);
        const StabilityReport s = stability(a);
        CHECK(routh_hurwitz_stability(a).stable == s.stable);
    }
    for (double g = 0.1; g < 1.2; g += 0.1) {
        const Matrix8 a = build_drift(qtest::working_point(g, g, -2.5));
        CHECK(routh_hurwitz_stability(a).stable == stability(a).stable);
    }
}
