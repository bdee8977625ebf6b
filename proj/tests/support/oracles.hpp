#pragma once

// Test-side reference implementations and random generators. Nothing here
// calls into the closed forms under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "qhybrid/dynamics.hpp"
#include "qhybrid/params.hpp"

namespace qtest {

using Matrix4 = Eigen::Matrix4d;
using qhybrid::Matrix8;

inline constexpr double kTwoPi = 6.283185307179586;

/// Frozen values from an independent evaluation with CODATA hbar, k_B, c.
inline constexpr double kNbarOmega2pi1e7T10mK = 20.340618351800995;
inline constexpr double kDriveP35mWKappaPi1e7L1064 = 3432072111683.073;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

private:
    std::mt19937_64 gen_;
};

inline Matrix4 omega4() {
    Matrix4 w = Matrix4::Zero();
    w(0, 1) = 1.0;
    w(1, 0) = -1.0;
    w(2, 3) = 1.0;
    w(3, 2) = -1.0;
    return w;
}

inline Matrix4 rotation(double th1, double th2) {
    Matrix4 r = Matrix4::Zero();
    r.block<2, 2>(0, 0) << std::cos(th1), std::sin(th1), -std::sin(th1), std::cos(th1);
    r.block<2, 2>(2, 2) << std::cos(th2), std::sin(th2), -std::sin(th2), std::cos(th2);
    return r;
}

inline Matrix4 single_squeeze(double s1, double s2) {
    return Eigen::Vector4d(std::exp(-s1), std::exp(s1), std::exp(-s2), std::exp(s2)).asDiagonal();
}

inline Matrix4 beam_splitter(double t) {
    const double c = std::cos(t), s = std::sin(t);
    Matrix4 b = Matrix4::Zero();
    b(0, 0) = b(1, 1) = b(2, 2) = b(3, 3) = c;
    b(0, 2) = b(1, 3) = s;
    b(2, 0) = b(3, 1) = -s;
    return b;
}

inline Matrix4 two_mode_squeeze(double r) {
    const double c = std::cosh(r), s = std::sinh(r);
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
    m(0, 2) = m(2, 0) = s;
    m(1, 3) = m(3, 1) = -s;
    return m;
}

/// Covariance of the two-mode squeezed vacuum, vacuum variance 1/2.
inline Matrix4 tmsv(double r) {
    return 0.5 * two_mode_squeeze(r) * two_mode_squeeze(r).transpose();
}

/// Random symplectic matrix as a product of passive and active Gaussian gates.
inline Matrix4 random_symplectic(Rng& rng, int layers = 3) {
    Matrix4 s = Matrix4::Identity();
    for (int k = 0; k < layers; ++k) {
        s = rotation(rng.uniform(0, kTwoPi), rng.uniform(0, kTwoPi)) * s;
        s = single_squeeze(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8)) * s;
        s = beam_splitter(rng.uniform(0, kTwoPi)) * s;
        s = two_mode_squeeze(rng.uniform(-0.7, 0.7)) * s;
    }
    return s;
}

/// Random physical two-mode covariance: S diag(n1, n1, n2, n2) S^T, n_i >= 1/2.
inline Matrix4 random_physical_cm(Rng& rng) {
    const double n1 = 0.5 + rng.uniform(0.0, 1.0) * rng.uniform(0.0, 3.0);
    const double n2 = 0.5 + rng.uniform(0.0, 1.0) * rng.uniform(0.0, 3.0);
    const Matrix4 s = random_symplectic(rng);
    return s * Eigen::Vector4d(n1, n1, n2, n2).asDiagonal() * s.transpose();
}

/// Symplectic eigenvalues via the spectrum of i*Omega*V; returns the smallest.
inline double smallest_symplectic_eigen(const Matrix4& v) {
    const Eigen::Matrix4cd m = std::complex<double>(0, 1) * (omega4() * v).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m, false);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) best = std::min(best, std::abs(es.eigenvalues()(i).real()));
    return best;
}

/// Oracle for eta_minus: partial transpose (p_B -> -p_B), then the spectrum.
inline double pt_eta_minus(const Matrix4& v) {
    const Matrix4 p = Eigen::Vector4d(1, 1, 1, -1).asDiagonal();
    return smallest_symplectic_eigen(p * v * p);
}

/// Random Hurwitz 8x8 matrix: Gaussian entries shifted left past the spectrum.
inline Matrix8 random_stable_drift(Rng& rng, double scale) {
    Matrix8 a;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) a(i, j) = scale * rng.normal();
    const double abscissa = Eigen::EigenSolver<Matrix8>(a, false).eigenvalues().real().maxCoeff();
    a.diagonal().array() -= abscissa + scale * rng.uniform(0.05, 1.0);
    return a;
}

/// Random symmetric positive semidefinite 8x8 matrix of rank `rank`.
inline Matrix8 random_psd(Rng& rng, double scale, int rank = 8) {
    Eigen::Matrix<double, 8, Eigen::Dynamic> b(8, rank);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < rank; ++j) b(i, j) = rng.normal();
    const Matrix8 m = scale * b * b.transpose();
    return 0.5 * (m + m.transpose());
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

/// Working point with the standard rates and the couplings given in units of omega_m.
inline qhybrid::EffectiveParams working_point(double g_om, double g_lc, double delta_at,
                                              double temperature = 0.01) {
    using std::numbers::pi;
    qhybrid::EffectiveParams p;
    p.omega_m = 2 * pi * 1e7;
    p.kappa = pi * 1e7;
    p.gamma_m = 2 * pi * 1e2;
    p.gamma_at = pi * 1e7;
    p.gamma_lc = 2 * pi * 1e2;
    p.g_at_eff = 1.2 * pi * 1e7;
    p.delta_cav_eff = p.omega_m;
    p.omega_lc_eff = p.omega_m;
    p.g_om_eff = g_om * p.omega_m;
    p.g_lc_eff = g_lc * p.omega_m;
    p.delta_at = delta_at * p.omega_m;
    p.nbar_m = qhybrid::thermal_occupation(p.omega_m, temperature);
    p.nbar_lc = qhybrid::thermal_occupation(p.omega_lc_eff, temperature);
    return p;
}

}  // namespace qtest
