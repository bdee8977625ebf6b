#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qhybrid/params.hpp"

namespace qhybrid::cli {

// Exit codes; stable across releases.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPhysics = 2;

enum class Subcommand { Point, Sweep, StabilityMap, ReproduceFigure };

inline const std::vector<std::string> kFigureIds{"fig2a", "fig2b", "fig3", "fig4a", "fig4b", "fig5"};

struct RunConfig {
    Subcommand subcommand = Subcommand::Point;
    std::optional<Mode> mode;  // selects the bundled default when no file is given
    std::filesystem::path parameter_file;
    std::filesystem::path sweep_spec_file;
    std::optional<std::string> figure_id;
    std::string output_prefix;
    int verbosity = 0;

    std::vector<std::string> assignments;  // --set key=value
    std::string axis1, axis2, bipartitions, plot = "auto";
    std::filesystem::path dump_matrices_prefix, dump_covariance_path;
    std::filesystem::path data_dir;

    /// Figure id required iff the subcommand is reproduce-figure.
    void validate() const;
};

/// Directory holding the bundled parameter files and figure specs.
std::filesystem::path default_data_dir();

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_point(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_stability_map(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_reproduce_figure(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qhybrid::cli
