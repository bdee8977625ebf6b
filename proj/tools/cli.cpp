#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "qhybrid/config.hpp"
#include "qhybrid/constants.hpp"
#include "qhybrid/errors.hpp"
#include "qhybrid/pipeline.hpp"
#include "qhybrid/routh_hurwitz.hpp"
#include "qhybrid/sweep.hpp"

namespace qhybrid::cli {
namespace {

std::string sci(double v, int digits = 6) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

std::string fixed(double v, int digits = 6) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string complex_text(std::complex<double> z) {
    return sci(z.real()) + (z.imag() < 0 ? " - " : " + ") + sci(std::abs(z.imag())) + "i";
}

void write_matrix_csv(const Matrix8& m, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    for (std::size_t j = 0; j < kQuadratureNames.size(); ++j) {
        f << (j ? "," : "") << kQuadratureNames[j];
    }
    f << '\n';
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.16e", m(i, j));
            f << (j ? "," : "") << buf;
        }
        f << '\n';
    }
}

std::filesystem::path with_suffix(const std::string& prefix, const std::string& suffix) {
    return std::filesystem::path(prefix + suffix);
}

std::filesystem::path data_dir(const RunConfig& c) {
    return c.data_dir.empty() ? default_data_dir() : c.data_dir;
}

ParameterSet load_base(const RunConfig& c) {
    std::filesystem::path file = c.parameter_file;
    if (file.empty()) {
        file = data_dir(c) /
               (c.mode.value_or(Mode::Effective) == Mode::Physical ? "base_physical.json"
                                                                    : "base_effective.json");
    }
    ParameterSet p = load_parameter_set(file);
    if (c.mode && *c.mode != p.mode) {
        throw ConfigError("mode", "--mode " + std::string(to_string(*c.mode)) + " contradicts '" +
                                      file.string() + "' which is " + std::string(to_string(p.mode)));
    }
    for (const std::string& a : c.assignments) {
        apply_assignment(p, a);
    }
    return p;
}

std::vector<Bipartition> parse_bipartition_list(const std::string& text) {
    std::vector<Bipartition> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(parse_bipartition(item));
        }
    }
    return out;
}

void print_effective(std::ostream& out, const EffectiveParams& e) {
    const double wm = e.omega_m;
    out << "effective parameters (rad/s, and in units of omega_m):\n";
    auto line = [&](const char* name, double v) {
        out << "  " << name << std::string(16 - std::string(name).size(), ' ') << sci(v) << "  ("
            << fixed(v / wm) << ")\n";
    };
    line("omega_m", e.omega_m);
    line("kappa", e.kappa);
    line("gamma_m", e.gamma_m);
    line("gamma_at", e.gamma_at);
    line("gamma_lc", e.gamma_lc);
    line("delta_cav_eff", e.delta_cav_eff);
    line("delta_at", e.delta_at);
    line("omega_lc_eff", e.omega_lc_eff);
    line("g_om_eff", e.g_om_eff);
    line("g_lc_eff", e.g_lc_eff);
    line("g_at_eff", e.g_at_eff);
    out << "  nbar_m          " << sci(e.nbar_m) << "\n";
    out << "  nbar_lc         " << sci(e.nbar_lc) << "\n";
}

void print_sweep_summary(std::ostream& out, const SweepResult& r) {
    std::size_t ok = 0, unstable = 0, failed = 0;
    for (const SweepPoint& p : r.points) {
        ok += p.status == PointStatus::Ok;
        unstable += p.status == PointStatus::Unstable;
        failed += p.status == PointStatus::SolverFailed;
    }
    out << "points: " << r.points.size() << " (ok " << ok << ", unstable " << unstable
        << ", solver-failed " << failed << ")\n";
    for (std::size_t k = 0; k < r.spec.bipartitions.size(); ++k) {
        double best = -1.0;
        const SweepPoint* at = nullptr;
        for (const SweepPoint& p : r.points) {
            if (p.log_negativity[k] && *p.log_negativity[k] > best) {
                best = *p.log_negativity[k];
                at = &p;
            }
        }
        out << "  max E_N " << r.spec.bipartitions[k].label() << " = ";
        if (!at) {
            out << "n/a\n";
            continue;
        }
        out << fixed(best) << " at " << r.spec.axis1.name << " = " << fixed(at->axis1, 4);
        if (at->axis2) {
            out << ", " << r.spec.axis2->name << " = " << fixed(*at->axis2, 4);
        }
        out << "\n";
    }
}

void write_outputs(const SweepResult& r, const std::string& prefix, const std::string& plot,
                   const std::string& title, std::ostream& out) {
    const auto csv = with_suffix(prefix, ".csv");
    emit_csv(r, csv);
    out << "wrote " << csv.string() << "\n";
    if (plot == "none") {
        return;
    }
    const PlotKind kind = plot == "auto" ? (r.two_dimensional() ? PlotKind::Contour : PlotKind::Lines)
                                         : parse_plot_kind(plot);
    const auto svg = with_suffix(prefix, ".svg");
    emit_plot(r, kind, svg, title);
    out << "wrote " << svg.string() << "\n";
}

void print_failures(std::ostream& out, const SweepResult& r) {
    for (const SweepPoint& p : r.points) {
        if (p.status == PointStatus::SolverFailed) {
            out << "  failed at " << r.spec.axis1.name << " = " << p.axis1;
            if (p.axis2) out << ", " << r.spec.axis2->name << " = " << *p.axis2;
            out << ": " << p.message << "\n";
        }
    }
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitPhysics;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace

void RunConfig::validate() const {
    const bool wants_figure = subcommand == Subcommand::ReproduceFigure;
    if (wants_figure != figure_id.has_value()) {
        throw ContractError(wants_figure ? "reproduce-figure requires --figure"
                                         : "--figure is only valid with reproduce-figure");
    }
    if (figure_id &&
        std::find(kFigureIds.begin(), kFigureIds.end(), *figure_id) == kFigureIds.end()) {
        throw ContractError("unknown figure id '" + *figure_id + "'");
    }
}

std::filesystem::path default_data_dir() {
    std::error_code ec;
    const auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        const auto installed = exe.parent_path().parent_path() / "share" / "qhybrid";
        if (std::filesystem::exists(installed / "base_effective.json")) {
            return installed;
        }
    }
    return QHYBRID_SOURCE_DATA_DIR;
}

int cmd_point(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ParameterSet p = load_base(c);
        const auto bps = all_bipartitions();
        const PointEvaluation ev = evaluate_point(p, bps);

        out << "mode: " << to_string(p.mode) << "\n";
        if (ev.steady_state) {
            const auto& s = ev.steady_state->state;
            const auto& rep = ev.steady_state->report;
            out << "mean-field steady state:\n"
                << "  a_s = " << complex_text(s.a_s) << "  |a_s| = " << sci(std::abs(s.a_s)) << "\n"
                << "  c_s = " << complex_text(s.c_s) << "\n"
                << "  q_s = " << sci(s.q_s) << "\n"
                << "  x_s = " << sci(s.x_s) << "\n"
                << "  p_s = " << sci(s.p_s) << ", phi_s = " << sci(s.phi_s) << "\n"
                << "  residual " << sci(rep.residual, 3) << " after " << rep.iterations
                << " iterations\n";
            if (c.verbosity > 0) {
                const double span = 2.0 * std::abs(s.x_s) + 1.0;
                const auto roots = scan_roots(p.physical, s.x_s - span, s.x_s + span, 4001);
                out << "  root scan on [" << sci(s.x_s - span, 3) << ", " << sci(s.x_s + span, 3)
                    << "]: " << roots.size() << " root(s)";
                for (double x : roots) out << " " << sci(x, 6);
                out << "\n";
            }
        } else if (ev.status == PointStatus::SolverFailed && p.mode == Mode::Physical) {
            err << "mean-field solve failed: " << ev.message << "\n";
            return kExitPhysics;
        }
        print_effective(out, ev.effective);

        if (!c.dump_matrices_prefix.empty()) {
            const std::string prefix = c.dump_matrices_prefix.string();
            write_matrix_csv(ev.drift, prefix + "_drift.csv");
            write_matrix_csv(ev.diffusion, prefix + "_diffusion.csv");
            out << "wrote " << prefix << "_drift.csv, " << prefix << "_diffusion.csv\n";
        }

        if (!ev.stability) {
            err << "evaluation failed: " << ev.message << "\n";
            return kExitPhysics;
        }
        const auto& st = *ev.stability;
        out << "stability: max Re(lambda) = " << sci(st.max_real_eigenvalue) << " rad/s ("
            << sci(st.max_real_eigenvalue / ev.effective.omega_m, 4) << " omega_m) -> "
            << (st.stable ? (st.marginal ? "stable (marginal)" : "stable") : "UNSTABLE") << "\n";
        if (c.verbosity > 0) {
            out << "eigenvalues of A / omega_m:\n";
            for (auto z : st.eigenvalues) out << "  " << complex_text(z / ev.effective.omega_m) << "\n";
            const RouthReport rh = routh_hurwitz_stability(ev.drift);
            out << "routh-hurwitz: " << (rh.stable ? "stable" : "not stable") << " ("
                << rh.sign_changes << " sign changes" << (rh.degenerate ? ", degenerate" : "") << ")\n";
        }
        if (ev.status == PointStatus::Unstable) {
            err << "point is unstable; no steady-state covariance exists\n";
            return kExitPhysics;
        }
        if (ev.status != PointStatus::Ok) {
            err << "evaluation failed: " << ev.message << "\n";
            return kExitPhysics;
        }
        if (!c.dump_covariance_path.empty()) {
            write_matrix_csv(ev.covariance->matrix(), c.dump_covariance_path);
            out << "wrote " << c.dump_covariance_path.string() << "\n";
        }
        out << "bipartition   eta_minus        E_N\n";
        for (const EntanglementReport& r : ev.entanglement) {
            const std::string label = r.bipartition.label();
            out << "  " << label << std::string(12 - label.size(), ' ') << sci(r.eta_minus) << "  "
                << fixed(r.log_negativity) << "\n";
        }
        return kExitOk;
    });
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        SweepSpec spec;
        if (!c.sweep_spec_file.empty()) {
            spec = load_sweep_spec(c.sweep_spec_file);
            for (const std::string& a : c.assignments) apply_assignment(spec.base, a);
        } else {
            spec.base = load_base(c);
        }
        if (!c.axis1.empty()) spec.axis1 = parse_axis(c.axis1);
        if (!c.axis2.empty()) spec.axis2 = parse_axis(c.axis2);
        if (!c.bipartitions.empty()) {
            spec.bipartitions = parse_bipartition_list(c.bipartitions);
        } else if (c.sweep_spec_file.empty()) {
            spec.bipartitions = macroscopic_bipartitions();
        }
        if (spec.axis1.name.empty()) {
            throw ContractError("sweep needs --axis1 or a --spec file");
        }
        const SweepResult r = run_sweep(spec);
        print_sweep_summary(out, r);
        if (c.verbosity > 0) print_failures(out, r);
        write_outputs(r, c.output_prefix.empty() ? "sweep" : c.output_prefix, c.plot, "", out);
        return kExitOk;
    });
}

int cmd_stability_map(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (c.axis1.empty() || c.axis2.empty()) {
            throw ContractError("stability-map needs --axis1 and --axis2");
        }
        SweepSpec spec;
        spec.base = load_base(c);
        spec.axis1 = parse_axis(c.axis1);
        spec.axis2 = parse_axis(c.axis2);
        spec.record_stability = true;
        const SweepResult r = run_sweep(spec);

        std::size_t agree = 0, compared = 0;
        for (const SweepPoint& p : r.points) {
            if (p.status == PointStatus::SolverFailed) continue;
            const ParameterSet pp = sweep_point_parameters(spec, p.axis1, p.axis2);
            const EffectiveParams e = pp.mode == Mode::Physical
                                          ? effective_from_physical(pp.physical,
                                                                    solve_steady_state(pp.physical).state)
                                          : pp.resolved_effective();
            ++compared;
            agree += routh_hurwitz_stability(build_drift(e)).stable == (p.status == PointStatus::Ok);
        }
        print_sweep_summary(out, r);
        out << "routh-hurwitz agreement: " << agree << "/" << compared << " points\n";
        write_outputs(r, c.output_prefix.empty() ? "stability" : c.output_prefix, "contour",
                      "Stability map", out);
        return kExitOk;
    });
}

int cmd_reproduce_figure(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        c.validate();
        const auto path = data_dir(c) / "figures" / (*c.figure_id + ".json");
        const FigureSpec fig = load_figure_spec(path);
        out << "reproducing " << *c.figure_id << ": " << fig.title << "\n";
        const SweepResult r = run_sweep(fig.sweep);
        print_sweep_summary(out, r);
        if (c.verbosity > 0) print_failures(out, r);
        const std::string prefix = (c.output_prefix.empty() ? std::string("qhybrid") : c.output_prefix) +
                                   "_" + *c.figure_id;
        write_outputs(r, prefix, fig.plot == PlotKind::Lines ? "lines" : "contour", fig.title, out);
        return kExitOk;
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qhybrid: steady-state Gaussian entanglement in a cavity / mirror / atomic-ensemble / "
                 "LC-circuit system"};
    app.require_subcommand(1);
    RunConfig c;
    std::string mode_text;
    std::vector<CLI::Option*> verbose_flags;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", c.parameter_file, "Parameter file (JSON)");
        sub->add_option("--mode", mode_text, "effective or physical; picks the bundled base config")
            ->check(CLI::IsMember({"effective", "physical", "EFFECTIVE", "PHYSICAL"}));
        sub->add_option("--set", c.assignments, "Override a parameter, key=value (key may end in /omega_m)");
        sub->add_option("--data-dir", c.data_dir, "Directory with bundled configs and figure specs");
        verbose_flags.push_back(sub->add_flag("-v,--verbose", "More diagnostics"));
    };

    auto* point = app.add_subcommand("point", "Evaluate one parameter point");
    add_common(point);
    point->add_option("--dump-matrices", c.dump_matrices_prefix, "Write <prefix>_drift.csv and <prefix>_diffusion.csv");
    point->add_option("--dump-covariance", c.dump_covariance_path, "Write the 8x8 covariance matrix as CSV");

    auto* sweep = app.add_subcommand("sweep", "Sweep one or two parameters");
    add_common(sweep);
    sweep->add_option("--spec", c.sweep_spec_file, "Sweep spec file (JSON)");
    sweep->add_option("--axis1", c.axis1, "name:start:stop:count");
    sweep->add_option("--axis2", c.axis2, "name:start:stop:count");
    sweep->add_option("--bipartitions", c.bipartitions, "e.g. MO-AE,AE-LC,MO-LC");
    sweep->add_option("--out", c.output_prefix, "Output prefix for .csv/.svg");
    sweep->add_option("--plot", c.plot, "auto, lines, contour or none");

    auto* smap = app.add_subcommand("stability-map", "Map the drift-matrix stability margin on a 2-D grid");
    add_common(smap);
    smap->add_option("--axis1", c.axis1, "name:start:stop:count")->required();
    smap->add_option("--axis2", c.axis2, "name:start:stop:count")->required();
    smap->add_option("--out", c.output_prefix, "Output prefix for .csv/.svg");

    auto* fig = app.add_subcommand("reproduce-figure", "Run a bundled figure recipe");
    add_common(fig);
    std::string figure;
    fig->add_option("--figure", figure, "fig2a, fig2b, fig3, fig4a, fig4b or fig5")->required();
    fig->add_option("--out", c.output_prefix, "Output prefix; files are <prefix>_<figure>.csv/.svg");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();  // program name
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    for (const CLI::Option* f : verbose_flags) {
        c.verbosity += static_cast<int>(f->count());
    }
    if (!mode_text.empty()) {
        c.mode = (mode_text == "physical" || mode_text == "PHYSICAL") ? Mode::Physical : Mode::Effective;
    }
    if (point->parsed()) {
        c.subcommand = Subcommand::Point;
        return cmd_point(c, out, err);
    }
    if (sweep->parsed()) {
        c.subcommand = Subcommand::Sweep;
        return cmd_sweep(c, out, err);
    }
    if (smap->parsed()) {
        c.subcommand = Subcommand::StabilityMap;
        return cmd_stability_map(c, out, err);
    }
    c.subcommand = Subcommand::ReproduceFigure;
    c.figure_id = figure;
    return cmd_reproduce_figure(c, out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace qhybrid::cli
