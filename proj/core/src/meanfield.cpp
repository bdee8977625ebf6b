#include "qhybrid/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhybrid/constants.hpp"

namespace qhybrid {
namespace {

using cplx = std::complex<double>;

double relative_gap(cplx lhs, cplx rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

double relative_gap(double lhs, double rhs) {
    return relative_gap(cplx(lhs), cplx(rhs));
}

cplx atom_susceptibility(const PhysicalParams& p) {
    return cplx(p.gamma_at, p.delta_at);
}

void check_options(const MeanFieldOptions& opt) {
    if (!(opt.tolerance > 0.0) || opt.max_iterations < 1 || !(opt.damping > 0.0) ||
        opt.damping > 1.0) {
        throw ContractError("mean-field solver: need tolerance > 0, max_iterations >= 1, damping in (0,1]");
    }
}

// Bisection on the scalar residual inside [lo, hi] where it changes sign.
double bisect(const MeanFieldMap& map, double lo, double hi, double tol, int& iterations) {
    double flo = map.scalar_residual(lo);
    for (int i = 0; i < 200; ++i) {
        ++iterations;
        const double mid = 0.5 * (lo + hi);
        const double fmid = map.scalar_residual(mid);
        if (fmid == 0.0) {
            return mid;
        }
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (std::abs(hi - lo) <= tol * std::max(1.0, std::abs(mid))) {
            break;
        }
    }
    return 0.5 * (lo + hi);
}

// Relaxed fixed-point iteration from x0. The relaxation factor follows a
// secant estimate s of the map's slope, lambda = 1/(1 - s) capped at the
// requested damping; before an estimate exists it is halved whenever the
// step grows. Returns false when it runs out of iterations.
bool relax(const MeanFieldMap& map, double& x, const MeanFieldOptions& opt, int& iterations,
           bool& collapsed) try {
    double lambda = opt.damping;
    double prev_step = std::numeric_limits<double>::infinity();
    double prev_x = 0.0;
    double prev_fx = 0.0;
    bool have_prev = false;
    for (int i = 0; i < opt.max_iterations; ++i) {
        ++iterations;
        const double fx = map.x_map(x);
        const double step = fx - x;
        if (std::abs(step) <= 0.1 * opt.tolerance * std::max(1.0, std::abs(fx))) {
            x = fx;
            return true;
        }
        const double slope = have_prev && x != prev_x ? (fx - prev_fx) / (x - prev_x)
                                                      : std::numeric_limits<double>::quiet_NaN();
        if (std::isfinite(slope)) {
            // slope >= 1: the map outruns x, so the root lies ahead; take the full step.
            lambda = slope < 1.0 ? std::clamp(1.0 / (1.0 - slope), 1e-9, opt.damping) : opt.damping;
        } else if (std::abs(step) > prev_step) {
            lambda = std::max(lambda * 0.5, 1e-6);
        }
        prev_step = std::abs(step);
        prev_x = x;
        prev_fx = fx;
        have_prev = true;
        x += lambda * step;
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return false;
} catch (const FrequencyCollapse&) {
    collapsed = true;
    return false;
}

// Bracket the root nearest to x0 by expanding outward and bisect.
bool bracket_and_bisect(const MeanFieldMap& map, double& x, double tol, int& iterations,
                        bool& collapsed) {
    const double f0 = map.scalar_residual(x);
    if (f0 == 0.0) {
        return true;
    }
    // The map sends x toward its own value, so the root lies in the direction of f0.
    double width = std::max(1.0, std::abs(f0));
    const double dir = f0 > 0.0 ? 1.0 : -1.0;
    double lo = x;
    for (int k = 0; k < 200; ++k) {
        const double hi = x + dir * width;
        double fhi = 0.0;
        try {
            fhi = map.scalar_residual(hi);
        } catch (const FrequencyCollapse&) {
            collapsed = true;
            return false;
        }
        if ((fhi > 0.0) != (f0 > 0.0)) {
            x = bisect(map, std::min(lo, hi), std::max(lo, hi), tol, iterations);
            return true;
        }
        lo = hi;
        width *= 2.0;
    }
    return false;
}

SteadyStateResult finish(const PhysicalParams& p, const MeanFieldMap& map, double x, int iterations,
                         double tol) {
    SteadyStateResult r;
    r.state = map.state_at(x);
    r.report.iterations = iterations;
    r.report.residual = verify_fixed_point(p, r.state);
    r.report.converged = r.report.residual <= tol;
    return r;
}

}  // namespace

MeanFieldMap::MeanFieldMap(const PhysicalParams& p)
    : drive(drive_amplitude(p)), g_om(optomechanical_coupling(p)), bias(bias_drive(p)), params(p) {}

SteadyState MeanFieldMap::state_at(double x_s) const {
    const PhysicalParams& p = params;
    const double omega_lc_eff = p.omega_lc + 2.0 * p.g_lc_bare * x_s;
    if (!(omega_lc_eff > 0.0)) {
        throw FrequencyCollapse("frequency collapse: omega_lc + 2 G_LC x_s = " +
                                std::to_string(omega_lc_eff) + " at x_s = " + std::to_string(x_s));
    }
    const double delta_cav_eff = p.delta_cav - g_om * x_s;
    const cplx chi_at = atom_susceptibility(p);
    SteadyState s;
    s.a_s = drive / (cplx(p.kappa, delta_cav_eff) + p.g_at_eff * p.g_at_eff / chi_at);
    s.c_s = cplx(0.0, -p.g_at_eff) * s.a_s / chi_at;
    s.q_s = bias / omega_lc_eff;
    s.x_s = x_s;
    return s;
}

double MeanFieldMap::x_map(double x_s) const {
    const SteadyState s = state_at(x_s);
    return (g_om * std::norm(s.a_s) - params.g_lc_bare * s.q_s * s.q_s) / params.omega_m;
}

double MeanFieldMap::scalar_residual(double x_s) const {
    return x_map(x_s) - x_s;
}

double verify_fixed_point(const PhysicalParams& p, const SteadyState& ss) {
    const MeanFieldMap map(p);
    const double delta_cav_eff = p.delta_cav - map.g_om * ss.x_s;
    const double omega_lc_eff = p.omega_lc + 2.0 * p.g_lc_bare * ss.x_s;
    const cplx chi_at = atom_susceptibility(p);

    const cplx a_rhs =
        map.drive / (cplx(p.kappa, delta_cav_eff) + p.g_at_eff * p.g_at_eff / chi_at);
    const cplx c_rhs = cplx(0.0, -p.g_at_eff) * ss.a_s / chi_at;
    const double q_rhs = omega_lc_eff == 0.0 ? std::numeric_limits<double>::infinity()
                                             : map.bias / omega_lc_eff;
    const double x_rhs = (map.g_om * std::norm(ss.a_s) - p.g_lc_bare * ss.q_s * ss.q_s) / p.omega_m;

    double r = 0.0;
    r = std::max(r, relative_gap(ss.a_s, a_rhs));
    r = std::max(r, relative_gap(ss.c_s, c_rhs));
    r = std::max(r, relative_gap(ss.q_s, q_rhs));
    r = std::max(r, relative_gap(ss.x_s, x_rhs));
    r = std::max(r, std::max(std::abs(ss.p_s), std::abs(ss.phi_s)));
    return r;
}

SteadyStateResult solve_steady_state(const PhysicalParams& p, const MeanFieldOptions& opt) {
    check_options(opt);
    const MeanFieldMap full(p);
    int iterations = 0;
    double x = 0.0;
    bool collapsed = false;

    // Decoupled mirror: x_s has no feedback on a_s or q_s, one evaluation is exact.
    if (full.g_om == 0.0 && p.g_lc_bare == 0.0) {
        return finish(p, full, full.x_map(0.0), 1, opt.tolerance);
    }

    // Continuation in the drive amplitude: track the branch that starts at the
    // undriven fixed point. Power scales as E^2, so ramp the power.
    int stages = 1;
    for (;;) {
        bool ok = true;
        double x_branch = 0.0;
        for (int k = 1; k <= stages && ok; ++k) {
            PhysicalParams stage = p;
            stage.laser_power = p.laser_power * static_cast<double>(k) / stages;
            const MeanFieldMap map(stage);
            double x_try = x_branch;
            ok = relax(map, x_try, opt, iterations, collapsed);
            if (!ok) {
                x_try = x_branch;
                ok = bracket_and_bisect(map, x_try, 0.01 * opt.tolerance, iterations, collapsed);
            }
            if (ok) {
                x_branch = x_try;
            }
        }
        if (ok) {
            x = x_branch;
            SteadyStateResult r = finish(p, full, x, iterations, opt.tolerance);
            if (r.report.converged && iterations <= opt.max_iterations) {
                return r;
            }
            // Polish with bisection around the relaxed value.
            double xb = x;
            if (bracket_and_bisect(full, xb, 1e-3 * opt.tolerance, iterations, collapsed)) {
                r = finish(p, full, xb, iterations, opt.tolerance);
                if (r.report.converged && iterations <= opt.max_iterations) {
                    return r;
                }
            }
        }
        if (iterations >= opt.max_iterations || stages >= 64) {
            break;
        }
        stages *= 4;
    }
    if (collapsed) {
        throw FrequencyCollapse("frequency collapse: omega_lc + 2 G_LC x_s reached 0 on the way to the steady state");
    }
    SteadyStateResult last = finish(p, full, x, iterations, opt.tolerance);
    last.report.converged = false;
    throw ConvergenceError("mean-field solve did not converge: residual " +
                               std::to_string(last.report.residual) + " after " +
                               std::to_string(iterations) + " iterations",
                           last);
}

SteadyStateResult solve_steady_state_newton(const PhysicalParams& p, double x_start,
                                            const MeanFieldOptions& opt) {
    check_options(opt);
    const MeanFieldMap map(p);
    double x = x_start;
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        const double g = map.scalar_residual(x);
        const double h = 1e-7 * std::max(1.0, std::abs(x));
        const double dg = (map.scalar_residual(x + h) - map.scalar_residual(x - h)) / (2.0 * h);
        if (dg == 0.0 || !std::isfinite(dg)) {
            break;
        }
        double step = -g / dg;
        // Backtrack until |g| decreases.
        double t = 1.0;
        for (int k = 0; k < 40; ++k) {
            double trial = 0.0;
            try {
                trial = std::abs(map.scalar_residual(x + t * step));
            } catch (const FrequencyCollapse&) {
                trial = std::numeric_limits<double>::infinity();
            }
            if (trial < std::abs(g) || t < 1e-9) {
                break;
            }
            t *= 0.5;
        }
        x += t * step;
        if (std::abs(t * step) <= 1e-3 * opt.tolerance * std::max(1.0, std::abs(x))) {
            ++it;
            break;
        }
    }
    SteadyStateResult r = finish(p, map, x, it, opt.tolerance);
    if (!r.report.converged) {
        throw ConvergenceError("Newton mean-field solve did not converge", r);
    }
    return r;
}

std::vector<double> scan_roots(const PhysicalParams& p, double x_lo, double x_hi, int samples) {
    if (samples < 2 || !(x_hi > x_lo)) {
        throw ContractError("scan_roots: need samples >= 2 and x_hi > x_lo");
    }
    const MeanFieldMap map(p);
    std::vector<double> roots;
    auto residual_or_nan = [&](double x) {
        try {
            return map.scalar_residual(x);
        } catch (const FrequencyCollapse&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    double prev_x = x_lo;
    double prev_f = residual_or_nan(x_lo);
    for (int i = 1; i < samples; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (samples - 1);
        const double f = residual_or_nan(x);
        if (prev_f == 0.0) {
            roots.push_back(prev_x);
        } else if (std::isfinite(prev_f) && std::isfinite(f) && (f > 0.0) != (prev_f > 0.0) &&
                   f != 0.0) {
            int unused = 0;
            roots.push_back(bisect(map, prev_x, x, 1e-14, unused));
        }
        prev_x = x;
        prev_f = f;
    }
    if (prev_f == 0.0) {
        roots.push_back(prev_x);
    }
    return roots;
}

}  // namespace qhybrid
