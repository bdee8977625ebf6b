#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "qhybrid/errors.hpp"
#include "qhybrid/sweep.hpp"

namespace qhybrid {
namespace {

struct Rgb {
    double r, g, b;
};

// Sampled viridis.
constexpr std::array<Rgb, 6> kRamp{{{68, 1, 84}, {65, 68, 135}, {42, 120, 142},
                                   {34, 168, 132}, {122, 209, 81}, {253, 231, 37}}};
constexpr int kLevels = 12;

std::string hex(const Rgb& c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(c.r)),
                  static_cast<int>(std::lround(c.g)), static_cast<int>(std::lround(c.b)));
    return buf;
}

// t in [0,1] quantized to kLevels bands, so neighbouring cells of one band
// merge into filled contour regions.
std::string level_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int level = std::min(kLevels - 1, static_cast<int>(t * kLevels));
    const double u = (level + 0.5) / kLevels * (kRamp.size() - 1);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(u), kRamp.size() - 2);
    const double f = u - static_cast<double>(i);
    const Rgb& a = kRamp[i];
    const Rgb& b = kRamp[i + 1];
    return hex({a.r + f * (b.r - a.r), a.g + f * (b.g - a.g), a.b + f * (b.b - a.b)});
}

std::string fmt(double v, const char* spec = "%.4g") {
    char buf[32];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string axis_label(const Axis& axis) {
    return axis.normalized() ? axis.parameter() + " / omega_m" : axis.name;
}

struct Frame {
    double x0, y0, w, h;          // plot area in SVG coordinates
    double xmin, xmax, ymin, ymax;  // data range

    double sx(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double sy(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void draw_axes(std::ostringstream& o, const Frame& f, const std::string& xlabel,
               const std::string& ylabel) {
    o << "<rect x=\"" << f.x0 << "\" y=\"" << f.y0 << "\" width=\"" << f.w << "\" height=\"" << f.h
      << "\" fill=\"none\" stroke=\"#000\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = f.xmin + (f.xmax - f.xmin) * k / 4.0;
        const double yv = f.ymin + (f.ymax - f.ymin) * k / 4.0;
        o << "<line x1=\"" << f.sx(xv) << "\" y1=\"" << f.y0 + f.h << "\" x2=\"" << f.sx(xv)
          << "\" y2=\"" << f.y0 + f.h + 5 << "\" stroke=\"#000\"/>\n";
        o << "<text x=\"" << f.sx(xv) << "\" y=\"" << f.y0 + f.h + 18
          << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
        o << "<line x1=\"" << f.x0 - 5 << "\" y1=\"" << f.sy(yv) << "\" x2=\"" << f.x0 << "\" y2=\""
          << f.sy(yv) << "\" stroke=\"#000\"/>\n";
        o << "<text x=\"" << f.x0 - 8 << "\" y=\"" << f.sy(yv) + 4
          << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }
    o << "<text x=\"" << f.x0 + f.w / 2 << "\" y=\"" << f.y0 + f.h + 36
      << "\" font-size=\"13\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
    o << "<text transform=\"translate(" << f.x0 - 48 << "," << f.y0 + f.h / 2
      << ") rotate(-90)\" font-size=\"13\" text-anchor=\"middle\">" << escape(ylabel) << "</text>\n";
}

struct SeriesStyle {
    const char* color;
    const char* dash;
};

SeriesStyle style_for(const Bipartition& b, std::size_t index) {
    const std::string l = b.label();
    if (l == "MO-AE" || l == "AE-MO") return {"#1f4fd8", "8,3,2,3"};
    if (l == "AE-LC" || l == "LC-AE") return {"#d62728", ""};
    if (l == "MO-LC" || l == "LC-MO") return {"#000000", "6,4"};
    static constexpr std::array<const char*, 4> extra{"#2ca02c", "#9467bd", "#8c564b", "#e377c2"};
    return {extra[index % extra.size()], "2,2"};
}

std::string render_lines(const SweepResult& r, std::string_view title) {
    const auto& bps = r.spec.bipartitions;
    double ymax = 0.0;
    for (const SweepPoint& p : r.points) {
        for (const auto& v : p.log_negativity) {
            if (v) ymax = std::max(ymax, *v);
        }
    }
    ymax = ymax > 0.0 ? ymax * 1.1 : 1.0;
    const Frame f{80, 50, 560, 360, r.spec.axis1.start, r.spec.axis1.stop, 0.0, ymax};
    if (f.xmin == f.xmax) {
        throw ContractError("render_svg: degenerate axis range");
    }

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" viewBox=\"0 0 720 480\">\n";
    o << "<rect width=\"720\" height=\"480\" fill=\"#fff\"/>\n";
    if (!title.empty()) {
        o << "<text x=\"360\" y=\"28\" font-size=\"15\" text-anchor=\"middle\">" << escape(title) << "</text>\n";
    }
    draw_axes(o, f, axis_label(r.spec.axis1), "E_N");
    for (std::size_t k = 0; k < bps.size(); ++k) {
        const SeriesStyle st = style_for(bps[k], k);
        std::string pts;
        auto flush = [&] {
            if (!pts.empty()) {
                o << "<polyline fill=\"none\" stroke=\"" << st.color << "\" stroke-width=\"2\"";
                if (*st.dash) o << " stroke-dasharray=\"" << st.dash << "\"";
                o << " points=\"" << pts << "\"/>\n";
                pts.clear();
            }
        };
        for (const SweepPoint& p : r.points) {
            if (!p.log_negativity[k]) {
                flush();
                continue;
            }
            pts += fmt(f.sx(p.axis1), "%.2f") + "," + fmt(f.sy(*p.log_negativity[k]), "%.2f") + " ";
        }
        flush();
        const double ly = f.y0 + 18 + 18.0 * static_cast<double>(k);
        o << "<line x1=\"" << f.x0 + f.w - 120 << "\" y1=\"" << ly << "\" x2=\"" << f.x0 + f.w - 90
          << "\" y2=\"" << ly << "\" stroke=\"" << st.color << "\" stroke-width=\"2\"";
        if (*st.dash) o << " stroke-dasharray=\"" << st.dash << "\"";
        o << "/>\n<text x=\"" << f.x0 + f.w - 84 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
          << escape(bps[k].label()) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

// One filled map. `value(point)` returns nullopt for white cells.
template <typename ValueFn>
void render_panel(std::ostringstream& o, const SweepResult& r, double ox, double oy,
                  const std::string& panel_title, const std::string& scale_label, ValueFn value) {
    const Axis& ax1 = r.spec.axis1;
    const Axis& ax2 = *r.spec.axis2;
    const Frame f{ox + 70, oy + 30, 260, 240, ax1.start, ax1.stop, ax2.start, ax2.stop};
    const std::size_t n1 = r.axis1_values.size();
    const std::size_t n2 = r.axis2_values.size();

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const SweepPoint& p : r.points) {
        if (auto v = value(p)) {
            lo = std::min(lo, *v);
            hi = std::max(hi, *v);
        }
    }
    const bool any = std::isfinite(lo);
    if (any && hi == lo) {
        hi = lo + 1.0;
    }

    o << "<text x=\"" << f.x0 + f.w / 2 << "\" y=\"" << oy + 18
      << "\" font-size=\"13\" text-anchor=\"middle\">" << escape(panel_title) << "</text>\n";
    const double cw = f.w / static_cast<double>(n1);
    const double ch = f.h / static_cast<double>(n2);
    o << "<g shape-rendering=\"crispEdges\">\n";
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            const auto v = value(r.at(i, j));
            if (!v) continue;
            o << "<rect class=\"cell\" x=\"" << fmt(f.x0 + cw * static_cast<double>(i), "%.2f") << "\" y=\""
              << fmt(f.y0 + f.h - ch * static_cast<double>(j + 1), "%.2f") << "\" width=\""
              << fmt(cw + 0.05, "%.2f") << "\" height=\"" << fmt(ch + 0.05, "%.2f") << "\" fill=\""
              << level_color((*v - lo) / (hi - lo)) << "\"/>\n";
        }
    }
    o << "</g>\n";
    draw_axes(o, f, axis_label(ax1), axis_label(ax2));

    // color bar
    const double bx = f.x0 + f.w + 12;
    for (int k = 0; k < kLevels; ++k) {
        const double t = (k + 0.5) / kLevels;
        o << "<rect x=\"" << bx << "\" y=\"" << fmt(f.y0 + f.h * (1.0 - (k + 1.0) / kLevels), "%.2f")
          << "\" width=\"10\" height=\"" << fmt(f.h / kLevels + 0.05, "%.2f") << "\" fill=\""
          << level_color(t) << "\"/>\n";
    }
    o << "<text x=\"" << bx + 14 << "\" y=\"" << f.y0 + 8 << "\" font-size=\"10\">"
      << (any ? fmt(hi, "%.3g") : "-") << "</text>\n";
    o << "<text x=\"" << bx + 14 << "\" y=\"" << f.y0 + f.h << "\" font-size=\"10\">"
      << (any ? fmt(lo, "%.3g") : "-") << "</text>\n";
    o << "<text x=\"" << bx + 5 << "\" y=\"" << f.y0 + f.h + 36
      << "\" font-size=\"10\" text-anchor=\"middle\">" << escape(scale_label) << "</text>\n";
}

std::string render_contour(const SweepResult& r, std::string_view title) {
    const auto& bps = r.spec.bipartitions;
    const bool stability_panel = r.spec.record_stability;
    const std::size_t panels = bps.size() + (stability_panel ? 1 : 0);
    if (panels == 0) {
        throw ContractError("render_svg: nothing to plot (no bipartitions, no stability record)");
    }
    const std::size_t cols = panels == 1 ? 1 : 2;
    const std::size_t rows = (panels + cols - 1) / cols;
    const double pw = 420, ph = 340, top = title.empty() ? 0 : 30;
    const double width = pw * static_cast<double>(cols);
    const double height = ph * static_cast<double>(rows) + top;

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    o << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#fff\"/>\n";
    if (!title.empty()) {
        o << "<text x=\"" << width / 2 << "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">"
          << escape(title) << "</text>\n";
    }
    static constexpr std::string_view kPanelTags = "abcdefgh";
    for (std::size_t k = 0; k < panels; ++k) {
        const double ox = pw * static_cast<double>(k % cols);
        const double oy = top + ph * static_cast<double>(k / cols);
        const std::string tag = "(" + std::string(1, kPanelTags[k % kPanelTags.size()]) + ") ";
        if (k < bps.size()) {
            render_panel(o, r, ox, oy, tag + "E_N " + bps[k].label(), "E_N",
                         [k](const SweepPoint& p) -> std::optional<double> {
                             const auto& v = p.log_negativity[k];
                             if (!v || *v <= 0.0) return std::nullopt;
                             return v;
                         });
        } else {
            const double wm = r.spec.base.omega_m();
            render_panel(o, r, ox, oy, tag + "max Re(eig A) / omega_m", "Re/omega_m",
                         [wm](const SweepPoint& p) -> std::optional<double> {
                             if (p.status != PointStatus::Ok || !p.margin) return std::nullopt;
                             return *p.margin / wm;
                         });
        }
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace

PlotKind parse_plot_kind(std::string_view text) {
    if (text == "lines") return PlotKind::Lines;
    if (text == "contour") return PlotKind::Contour;
    throw ContractError("unknown plot kind '" + std::string(text) + "' (expected lines or contour)");
}

std::string render_svg(const SweepResult& result, PlotKind kind, std::string_view title) {
    if (kind == PlotKind::Lines) {
        if (result.two_dimensional()) {
            throw ContractError("render_svg: a line chart needs a 1-D sweep");
        }
        return render_lines(result, title);
    }
    if (!result.two_dimensional()) {
        throw ContractError("render_svg: a contour map needs a 2-D sweep");
    }
    return render_contour(result, title);
}

void emit_plot(const SweepResult& result, PlotKind kind, const std::filesystem::path& path,
               std::string_view title) {
    const std::string svg = render_svg(result, kind, title);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("emit_plot: cannot open '" + path.string() + "' for writing: " +
                                 std::strerror(errno));
    }
    f << svg;
    if (!f.flush()) {
        throw std::runtime_error("emit_plot: write to '" + path.string() + "' failed");
    }
}

}  // namespace qhybrid
