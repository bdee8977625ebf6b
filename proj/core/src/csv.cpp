#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "qhybrid/errors.hpp"
#include "qhybrid/sweep.hpp"

namespace qhybrid {
namespace {

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string number(const std::optional<double>& v) {
    return v ? number(*v) : std::string();
}

std::string column_suffix(const Bipartition& b) {
    return std::string(to_string(b.first)) + "_" + std::string(to_string(b.second));
}

}  // namespace

std::string to_csv(const SweepResult& result) {
    std::string out = "axis1,axis2,stable,margin";
    for (const Bipartition& b : result.spec.bipartitions) {
        out += ",EN_" + column_suffix(b);
    }
    for (const Bipartition& b : result.spec.bipartitions) {
        out += ",eta_" + column_suffix(b);
    }
    out += ",status\n";

    for (const SweepPoint& p : result.points) {
        out += number(p.axis1);
        out += ',';
        out += number(p.axis2);
        out += ',';
        if (p.status != PointStatus::SolverFailed) {
            out += p.status == PointStatus::Ok ? '1' : '0';
        }
        out += ',';
        out += number(p.margin);
        for (const auto& v : p.log_negativity) {
            out += ',' + number(v);
        }
        for (const auto& v : p.eta_minus) {
            out += ',' + number(v);
        }
        out += ',';
        out += to_string(p.status);
        out += '\n';
    }
    return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("emit_csv: cannot open '" + path.string() + "' for writing: " +
                                 std::strerror(errno));
    }
    f << to_csv(result);
    if (!f.flush()) {
        throw std::runtime_error("emit_csv: write to '" + path.string() + "' failed");
    }
}

}  // namespace qhybrid
