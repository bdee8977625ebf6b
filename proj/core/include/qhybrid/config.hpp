#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qhybrid/params.hpp"
#include "qhybrid/sweep.hpp"

namespace qhybrid {

// Parameter files are flat JSON objects. `mode` is "EFFECTIVE" or "PHYSICAL";
// every other key is a parameter name of that mode with a numeric value.
// A key written as "<name>/omega_m" gives the value in units of omega_m.
// Unknown keys and non-numeric values raise ConfigError naming the key.

ParameterSet parse_parameter_set(std::string_view json_text);
ParameterSet load_parameter_set(const std::filesystem::path& path);

/// Sets `key` (optionally suffixed "/omega_m") on `p`.
void set_parameter(ParameterSet& p, std::string_view key, double value);

/// Parses "key=value" as used by `--set` on the command line.
void apply_assignment(ParameterSet& p, std::string_view assignment);

// Sweep spec files mirror SweepSpec:
//   base              parameter object, or a path relative to the spec file
//   overrides         optional object of parameter assignments applied to base
//   axis1, axis2      "name:start:stop:count" or {name, start, stop, count}
//   bipartitions      list such as ["MO-AE", "AE-LC"]
//   record_stability  bool, default true
//   solver            optional {tolerance, max_iterations, damping}
// Figure specs add `id`, `title` and `plot` ("lines" or "contour").

SweepSpec parse_sweep_spec(std::string_view json_text, const std::filesystem::path& base_dir = {});
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct FigureSpec {
    std::string id;
    std::string title;
    PlotKind plot = PlotKind::Lines;
    SweepSpec sweep;
};

FigureSpec parse_figure_spec(std::string_view json_text, const std::filesystem::path& base_dir = {});
FigureSpec load_figure_spec(const std::filesystem::path& path);

}  // namespace qhybrid
