#include "qhybrid/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qhybrid/errors.hpp"

namespace qhybrid {
namespace {

using json = nlohmann::json;

constexpr std::string_view kNormalizedSuffix = "/omega_m";

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError("", "cannot open '" + path.string() + "'");
    }
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

json parse_json(std::string_view text, std::string_view what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string(what) + " is not valid JSON: " + e.what());
    }
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

double number_at(const json& obj, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(key, "expected a number");
    }
    return v.get<double>();
}

ParameterSet parameters_from_json(const json& obj) {
    if (!obj.is_object()) {
        throw ConfigError("", "parameter set must be a JSON object");
    }
    if (!obj.contains("mode") || !obj.at("mode").is_string()) {
        throw ConfigError("mode", "missing or not a string (EFFECTIVE or PHYSICAL)");
    }
    ParameterSet p;
    const std::string mode = upper(obj.at("mode").get<std::string>());
    if (mode == "EFFECTIVE") {
        p.mode = Mode::Effective;
    } else if (mode == "PHYSICAL") {
        p.mode = Mode::Physical;
    } else {
        throw ConfigError("mode", "must be EFFECTIVE or PHYSICAL, got '" + mode + "'");
    }
    // Plain keys first so normalized keys see the final omega_m.
    for (const bool normalized : {false, true}) {
        for (const auto& [key, value] : obj.items()) {
            if (key == "mode" || key.starts_with("_")) {  // "_comment" and friends
                continue;
            }
            if (key.ends_with(kNormalizedSuffix) != normalized) {
                continue;
            }
            set_parameter(p, key, number_at(obj, key));
        }
    }
    return p;
}

Axis axis_from_json(const json& v, const std::string& key) {
    if (v.is_string()) {
        try {
            return parse_axis(v.get<std::string>());
        } catch (const ContractError& e) {
            throw ConfigError(key, e.what());
        }
    }
    if (!v.is_object()) {
        throw ConfigError(key, "expected \"name:start:stop:count\" or an object");
    }
    Axis a;
    try {
        a.name = v.at("name").get<std::string>();
        a.start = v.at("start").get<double>();
        a.stop = v.at("stop").get<double>();
        a.count = v.at("count").get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(key, std::string("malformed axis: ") + e.what());
    }
    return a;
}

SweepSpec sweep_from_json(const json& obj, const std::filesystem::path& base_dir) {
    if (!obj.is_object()) {
        throw ConfigError("", "sweep spec must be a JSON object");
    }
    static const std::vector<std::string> known{"base",         "overrides", "axis1",
                                                "axis2",        "bipartitions", "record_stability",
                                                "solver",       "id",        "title",
                                                "plot"};
    for (const auto& [key, value] : obj.items()) {
        if (!key.starts_with("_") && std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError(key, "unknown sweep spec key");
        }
    }

    SweepSpec s;
    if (!obj.contains("base")) {
        throw ConfigError("base", "missing");
    }
    const json& base = obj.at("base");
    if (base.is_string()) {
        s.base = load_parameter_set(base_dir / base.get<std::string>());
    } else {
        s.base = parameters_from_json(base);
    }
    if (obj.contains("overrides")) {
        const json& ov = obj.at("overrides");
        if (!ov.is_object()) {
            throw ConfigError("overrides", "expected an object");
        }
        for (const bool normalized : {false, true}) {
            for (const auto& [key, value] : ov.items()) {
                if (key.ends_with(kNormalizedSuffix) == normalized) {
                    set_parameter(s.base, key, number_at(ov, key));
                }
            }
        }
    }
    if (!obj.contains("axis1")) {
        throw ConfigError("axis1", "missing");
    }
    s.axis1 = axis_from_json(obj.at("axis1"), "axis1");
    if (obj.contains("axis2") && !obj.at("axis2").is_null()) {
        s.axis2 = axis_from_json(obj.at("axis2"), "axis2");
    }
    if (obj.contains("bipartitions")) {
        for (const json& b : obj.at("bipartitions")) {
            try {
                s.bipartitions.push_back(parse_bipartition(b.get<std::string>()));
            } catch (const std::exception& e) {
                throw ConfigError("bipartitions", e.what());
            }
        }
    }
    if (obj.contains("record_stability")) {
        s.record_stability = obj.at("record_stability").get<bool>();
    }
    if (obj.contains("solver")) {
        const json& sv = obj.at("solver");
        s.solver.tolerance = sv.value("tolerance", s.solver.tolerance);
        s.solver.max_iterations = sv.value("max_iterations", s.solver.max_iterations);
        s.solver.damping = sv.value("damping", s.solver.damping);
    }
    try {
        s.validate();
    } catch (const ContractError& e) {
        throw ConfigError("", e.what());
    }
    return s;
}

}  // namespace

void set_parameter(ParameterSet& p, std::string_view key, double value) {
    if (key.ends_with(kNormalizedSuffix)) {
        const std::string_view name = key.substr(0, key.size() - kNormalizedSuffix.size());
        if (name == "omega_m") {
            throw ConfigError(std::string(key), "omega_m cannot be given in units of itself");
        }
        p.set(name, value * p.omega_m());
        return;
    }
    p.set(key, value);
}

void apply_assignment(ParameterSet& p, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError(std::string(assignment), "expected key=value");
    }
    const std::string key(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw ConfigError(key, "value '" + text + "' is not a number");
    }
    set_parameter(p, key, v);
}

ParameterSet parse_parameter_set(std::string_view json_text) {
    return parameters_from_json(parse_json(json_text, "parameter file"));
}

ParameterSet load_parameter_set(const std::filesystem::path& path) {
    try {
        return parse_parameter_set(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(e.key(), path.string() + ": " + e.what());
    }
}

SweepSpec parse_sweep_spec(std::string_view json_text, const std::filesystem::path& base_dir) {
    return sweep_from_json(parse_json(json_text, "sweep spec"), base_dir);
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
    return parse_sweep_spec(read_file(path), path.parent_path());
}

FigureSpec parse_figure_spec(std::string_view json_text, const std::filesystem::path& base_dir) {
    const json obj = parse_json(json_text, "figure spec");
    FigureSpec f;
    f.sweep = sweep_from_json(obj, base_dir);
    f.id = obj.value("id", std::string());
    f.title = obj.value("title", std::string());
    try {
        f.plot = parse_plot_kind(obj.value("plot", std::string(f.sweep.axis2 ? "contour" : "lines")));
    } catch (const ContractError& e) {
        throw ConfigError("plot", e.what());
    }
    return f;
}

FigureSpec load_figure_spec(const std::filesystem::path& path) {
    return parse_figure_spec(read_file(path), path.parent_path());
}

}  // namespace qhybrid
