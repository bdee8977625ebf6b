#include "qhybrid/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qhybrid/errors.hpp"

namespace qhybrid {
namespace {

constexpr int kN = 8;
constexpr int kUnknowns = kN * (kN + 1) / 2;

using System = Eigen::Matrix<double, kUnknowns, kUnknowns>;
using Vector = Eigen::Matrix<double, kUnknowns, 1>;

// Packed upper-triangle index of the symmetric entry (i, j).
constexpr int packed(int i, int j) {
    if (i > j) {
        std::swap(i, j);
    }
    return i * kN - i * (i - 1) / 2 + (j - i);
}

Matrix8 lyapunov_rhs(const Matrix8& a, const Matrix8& d, const Matrix8& v) {
    return a * v + v * a.transpose() + d;
}

}  // namespace

StabilityReport stability(const Matrix8& a, double marginal_scale) {
    if (!a.allFinite()) {
        throw ContractError("stability: drift matrix has non-finite entries");
    }
    Eigen::EigenSolver<Matrix8> solver(a, false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("stability: eigenvalue computation failed");
    }
    StabilityReport r;
    const auto& ev = solver.eigenvalues();
    r.max_real_eigenvalue = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kN; ++i) {
        r.eigenvalues[static_cast<std::size_t>(i)] = ev(i);
        r.max_real_eigenvalue = std::max(r.max_real_eigenvalue, ev(i).real());
    }
    std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](auto x, auto y) {
        return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
    });
    r.stable = r.max_real_eigenvalue < 0.0;
    r.marginal = r.stable && marginal_scale > 0.0 && r.max_real_eigenvalue >= -1e-9 * marginal_scale;
    return r;
}

Matrix8 symplectic_form() {
    Matrix8 omega = Matrix8::Zero();
    for (int k = 0; k < kN; k += 2) {
        omega(k, k + 1) = 1.0;
        omega(k + 1, k) = -1.0;
    }
    return omega;
}

double CovarianceMatrix::asymmetry() const {
    const double scale = v_.cwiseAbs().maxCoeff();
    return scale == 0.0 ? 0.0 : (v_ - v_.transpose()).cwiseAbs().maxCoeff() / scale;
}

double CovarianceMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix8> es(0.5 * (v_ + v_.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double CovarianceMatrix::uncertainty_margin() const {
    using Complex8 = Eigen::Matrix<std::complex<double>, kN, kN>;
    const Complex8 h = (0.5 * (v_ + v_.transpose())).cast<std::complex<double>>() +
                       std::complex<double>(0.0, 0.5) * symplectic_form().cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Complex8> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double lyapunov_residual(const Matrix8& a, const Matrix8& d, const Matrix8& v) {
    const double r = lyapunov_rhs(a, d, v).norm();
    const double dn = d.norm();
    return dn == 0.0 ? r : r / dn;
}

CovarianceMatrix solve_lyapunov(const Matrix8& a, const Matrix8& d) {
    const StabilityReport st = stability(a);
    if (!st.stable) {
        const auto worst = st.eigenvalues.front();
        std::ostringstream msg;
        msg << "solve_lyapunov: drift matrix is not stable, eigenvalue " << worst.real()
            << (worst.imag() < 0 ? " - " : " + ") << std::abs(worst.imag()) << "i has real part >= 0";
        throw ContractError(msg.str());
    }
    if (!d.allFinite() || (d - d.transpose()).cwiseAbs().maxCoeff() != 0.0) {
        throw ContractError("solve_lyapunov: diffusion matrix must be finite and symmetric");
    }

    // V is invariant under (A, D) -> (A/s, D/s); scale to O(1) entries.
    const double s = a.cwiseAbs().maxCoeff();
    const Matrix8 as = a / s;
    const Matrix8 ds = d / s;

    System m = System::Zero();
    Vector b;
    for (int i = 0; i < kN; ++i) {
        for (int j = i; j < kN; ++j) {
            const int row = packed(i, j);
            for (int k = 0; k < kN; ++k) {
                m(row, packed(k, j)) += as(i, k);
                m(row, packed(i, k)) += as(j, k);
            }
            b(row) = -ds(i, j);
        }
    }

    const Eigen::FullPivLU<System> lu(m);
    if (!lu.isInvertible()) {
        throw NumericalError("solve_lyapunov: vectorized Lyapunov system is singular");
    }
    Vector x = lu.solve(b);
    // One step of iterative refinement.
    x += lu.solve(b - m * x);
    if (!x.allFinite()) {
        throw NumericalError("solve_lyapunov: non-finite solution");
    }

    Matrix8 v;
    for (int i = 0; i < kN; ++i) {
        for (int j = i; j < kN; ++j) {
            v(i, j) = v(j, i) = x(packed(i, j));
        }
    }
    return CovarianceMatrix(v);
}

CovarianceMatrix integrate_covariance(const Matrix8& a, const Matrix8& d, const CovarianceMatrix& v0,
                                      double t_final, double dt) {
    if (!(dt > 0.0) || !(t_final >= 0.0)) {
        throw ContractError("integrate_covariance: need dt > 0 and t_final >= 0");
    }
    const auto f = [&](const Matrix8& v) { return lyapunov_rhs(a, d, v); };
    const double limit = 1e10 * (1.0 + v0.matrix().norm() + t_final * d.norm());

    Matrix8 v = v0.matrix();
    double t = 0.0;
    while (t < t_final) {
        const double h = std::min(dt, t_final - t);
        const Matrix8 k1 = f(v);
        const Matrix8 k2 = f(v + 0.5 * h * k1);
        const Matrix8 k3 = f(v + 0.5 * h * k2);
        const Matrix8 k4 = f(v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if (!v.allFinite() || v.norm() > limit) {
            std::ostringstream msg;
            msg << "integrate_covariance: solution blew up at t = " << t << "; try a smaller dt than "
                << dt;
            throw NumericalError(msg.str());
        }
    }
    return CovarianceMatrix(0.5 * (v + v.transpose()));
}

}  // namespace qhybrid
