#include "qhybrid/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "qhybrid/errors.hpp"

namespace qhybrid {
namespace {

constexpr std::string_view kNormalizedSuffix = "/omega_m";

double parse_number(std::string_view text, std::string_view what) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ContractError("axis: cannot parse " + std::string(what) + " '" + s + "'");
    }
    return v;
}

void check_axis(const Axis& axis, const ParameterSet& base, std::string_view which) {
    if (axis.count < 2) {
        throw ContractError(std::string(which) + ": count must be >= 2 (got " +
                            std::to_string(axis.count) + ")");
    }
    if (!std::isfinite(axis.start) || !std::isfinite(axis.stop)) {
        throw ContractError(std::string(which) + ": start and stop must be finite");
    }
    const std::string param = axis.parameter();
    const auto names = parameter_names(base.mode);
    if (std::find(names.begin(), names.end(), param) == names.end()) {
        throw ContractError(std::string(which) + ": '" + param + "' is not a " +
                            std::string(to_string(base.mode)) + "-mode parameter");
    }
}

void apply_axis(ParameterSet& p, const Axis& axis, double value, double omega_m) {
    p.set(axis.parameter(), axis.normalized() ? value * omega_m : value);
}

}  // namespace

std::string Axis::parameter() const {
    return normalized() ? name.substr(0, name.size() - kNormalizedSuffix.size()) : name;
}

bool Axis::normalized() const {
    return name.size() > kNormalizedSuffix.size() && name.ends_with(kNormalizedSuffix);
}

std::vector<double> Axis::values() const {
    std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        v[static_cast<std::size_t>(i)] =
            count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1);
    }
    return v;
}

Axis parse_axis(std::string_view text) {
    // The name itself may not contain ':'; split from the right.
    std::vector<std::string_view> parts;
    std::string_view rest = text;
    for (int k = 0; k < 3; ++k) {
        const auto colon = rest.rfind(':');
        if (colon == std::string_view::npos) {
            throw ContractError("axis '" + std::string(text) + "' must be name:start:stop:count");
        }
        parts.push_back(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
    }
    Axis a;
    a.name = std::string(rest);
    a.start = parse_number(parts[2], "start");
    a.stop = parse_number(parts[1], "stop");
    int count = 0;
    const auto res = std::from_chars(parts[0].data(), parts[0].data() + parts[0].size(), count);
    if (res.ec != std::errc{} || res.ptr != parts[0].data() + parts[0].size()) {
        throw ContractError("axis: cannot parse count '" + std::string(parts[0]) + "'");
    }
    a.count = count;
    if (a.name.empty()) {
        throw ContractError("axis '" + std::string(text) + "' has an empty name");
    }
    return a;
}

void SweepSpec::validate() const {
    base.validate();
    check_axis(axis1, base, "axis1");
    if (axis2) {
        check_axis(*axis2, base, "axis2");
    }
    for (const Bipartition& b : bipartitions) {
        if (b.first == b.second) {
            throw ContractError("sweep: bipartition " + b.label() + " names one subsystem twice");
        }
    }
}

const SweepPoint& SweepResult::at(std::size_t i1, std::size_t i2) const {
    const std::size_t n2 = std::max<std::size_t>(1, axis2_values.size());
    return points.at(i1 * n2 + i2);
}

unsigned default_worker_count() {
    if (const char* env = std::getenv("QHYBRID_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return static_cast<unsigned>(n);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ParameterSet sweep_point_parameters(const SweepSpec& spec, double axis1, std::optional<double> axis2) {
    ParameterSet p = spec.base;
    const double omega_m = spec.base.omega_m();
    apply_axis(p, spec.axis1, axis1, omega_m);
    if (spec.axis2 && axis2) {
        apply_axis(p, *spec.axis2, *axis2, omega_m);
    }
    return p;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned workers) {
    spec.validate();
    SweepResult result;
    result.spec = spec;
    result.axis1_values = spec.axis1.values();
    if (spec.axis2) {
        result.axis2_values = spec.axis2->values();
    }
    const std::size_t n1 = result.axis1_values.size();
    const std::size_t n2 = std::max<std::size_t>(1, result.axis2_values.size());
    result.points.resize(n1 * n2);

    auto evaluate = [&](std::size_t index) {
        SweepPoint& pt = result.points[index];
        pt.axis1 = result.axis1_values[index / n2];
        if (spec.axis2) {
            pt.axis2 = result.axis2_values[index % n2];
        }
        pt.log_negativity.assign(spec.bipartitions.size(), std::nullopt);
        pt.eta_minus.assign(spec.bipartitions.size(), std::nullopt);
        try {
            const ParameterSet p = sweep_point_parameters(spec, pt.axis1, pt.axis2);
            const PointEvaluation ev = evaluate_point(p, spec.bipartitions, spec.solver);
            pt.status = ev.status;
            pt.message = ev.message;
            if (ev.stability) {
                pt.marginal = ev.stability->marginal;
                if (spec.record_stability) {
                    pt.margin = ev.stability->max_real_eigenvalue;
                }
            }
            if (ev.status == PointStatus::Ok) {
                for (std::size_t k = 0; k < ev.entanglement.size(); ++k) {
                    pt.log_negativity[k] = ev.entanglement[k].log_negativity;
                    pt.eta_minus[k] = ev.entanglement[k].eta_minus;
                }
            }
        } catch (const std::exception& e) {
            pt.status = PointStatus::SolverFailed;
            pt.message = e.what();
        }
    };

    if (workers == 0) {
        workers = default_worker_count();
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, result.points.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < result.points.size(); ++i) {
            evaluate(i);
        }
        return result;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < result.points.size(); i = next++) {
                evaluate(i);
            }
        });
    }
    pool.clear();  // joins
    return result;
}

}  // namespace qhybrid
