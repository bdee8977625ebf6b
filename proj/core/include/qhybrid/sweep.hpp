#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhybrid/dynamics.hpp"
#include "qhybrid/meanfield.hpp"
#include "qhybrid/params.hpp"
#include "qhybrid/pipeline.hpp"

namespace qhybrid {

/// One sweep axis. A name ending in "/omega_m" sweeps the parameter in units
/// of the base point's omega_m; the stored values stay normalized.
struct Axis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    std::string parameter() const;
    bool normalized() const;
    std::vector<double> values() const;
};

/// Parses "name:start:stop:count".
Axis parse_axis(std::string_view text);

struct SweepSpec {
    ParameterSet base;
    Axis axis1;
    std::optional<Axis> axis2;
    std::vector<Bipartition> bipartitions;
    bool record_stability = true;
    MeanFieldOptions solver;

    /// count >= 2 per axis, names valid for the base mode.
    void validate() const;
};

struct SweepPoint {
    double axis1 = 0.0;
    std::optional<double> axis2;
    PointStatus status = PointStatus::SolverFailed;
    /// Max real eigenvalue of the drift matrix [rad/s], when recorded.
    std::optional<double> margin;
    bool marginal = false;
    /// Parallel to SweepSpec::bipartitions; absent unless status is Ok.
    std::vector<std::optional<double>> log_negativity;
    std::vector<std::optional<double>> eta_minus;
    std::string message;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<double> axis1_values;
    std::vector<double> axis2_values;  // empty for 1-D sweeps
    /// Row-major: index = i1 * max(1, axis2_values.size()) + i2.
    std::vector<SweepPoint> points;

    bool two_dimensional() const { return !axis2_values.empty(); }
    const SweepPoint& at(std::size_t i1, std::size_t i2 = 0) const;
};

/// Evaluates every grid point independently. `workers` = 0 picks the
/// QHYBRID_WORKERS environment variable, else the hardware concurrency.
/// The result does not depend on the worker count.
SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 0);

/// Worker count used by run_sweep when called with 0.
unsigned default_worker_count();

/// The parameter set a sweep evaluates at the given axis values.
ParameterSet sweep_point_parameters(const SweepSpec& spec, double axis1, std::optional<double> axis2);

// CSV output: header axis1,axis2,stable,margin,EN_<A>_<B>...,eta_<A>_<B>...,status.
std::string to_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

enum class PlotKind { Lines, Contour };

PlotKind parse_plot_kind(std::string_view text);

/// Self-contained SVG: a line chart (1-D) or a panel of filled maps (2-D),
/// one per bipartition plus a stability panel when margins were recorded.
/// Throws ContractError on a kind/dimension mismatch.
std::string render_svg(const SweepResult& result, PlotKind kind, std::string_view title = {});
void emit_plot(const SweepResult& result, PlotKind kind, const std::filesystem::path& path,
               std::string_view title = {});

}  // namespace qhybrid
