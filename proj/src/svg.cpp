#include "flexblock/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "flexblock/error.hpp"

namespace flexblock {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void pad() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

double nice_step(double span) {
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double r = raw / mag;
    double f = r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0;
    return f * mag;
}

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::vector<SvgPanel>& panels,
                     int width, int panel_height) {
    const int margin_l = 70, margin_r = 150, margin_t = 42, margin_b = 46;
    const int plot_w = width - margin_l - margin_r;
    const int height = margin_t + panel_height * static_cast<int>(panels.size()) + margin_b;

    Range xr;
    for (const SvgPanel& p : panels)
        for (const SvgSeries& s : p.series)
            for (double v : s.x) xr.add(v);
    xr.pad();

    std::ofstream out(path);
    if (!out) throw FlexError(Err::IoError, "cannot write '" + path + "'");

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const SvgPanel& panel = panels[pi];
        const int top = margin_t + panel_height * static_cast<int>(pi) + 14;
        const int plot_h = panel_height - 40;

        Range yr;
        for (const SvgSeries& s : panel.series)
            for (double v : s.y) yr.add(v);
        yr.add(0.0);
        yr.pad();

        auto sx = [&](double v) {
            return margin_l + plot_w * (v - xr.lo) / (xr.hi - xr.lo);
        };
        auto sy = [&](double v) {
            return top + plot_h - plot_h * (v - yr.lo) / (yr.hi - yr.lo);
        };

        out << "<text x=\"" << margin_l << "\" y=\"" << top - 4
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">" << panel.title
            << "</text>\n";

        // Frame and ticks.
        out << "<rect x=\"" << margin_l << "\" y=\"" << top << "\" width=\"" << plot_w
            << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#999\"/>\n";
        double ys = nice_step(yr.hi - yr.lo);
        for (double v = std::ceil(yr.lo / ys) * ys; v <= yr.hi + 1e-12; v += ys) {
            out << "<line x1=\"" << margin_l << "\" y1=\"" << num(sy(v)) << "\" x2=\""
                << margin_l + plot_w << "\" y2=\"" << num(sy(v))
                << "\" stroke=\"#eee\"/>\n";
            out << "<text x=\"" << margin_l - 6 << "\" y=\"" << num(sy(v) + 4)
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(v)
                << "</text>\n";
        }
        double xs = nice_step(xr.hi - xr.lo);
        for (double v = std::ceil(xr.lo / xs) * xs; v <= xr.hi + 1e-12; v += xs) {
            out << "<line x1=\"" << num(sx(v)) << "\" y1=\"" << top + plot_h << "\" x2=\""
                << num(sx(v)) << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"#999\"/>\n";
            if (pi + 1 == panels.size())
                out << "<text x=\"" << num(sx(v)) << "\" y=\"" << top + plot_h + 16
                    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
                    << num(v) << "</text>\n";
        }
        out << "<text x=\"18\" y=\"" << top + plot_h / 2
            << "\" font-family=\"sans-serif\" font-size=\"11\" "
            << "transform=\"rotate(-90 18 " << top + plot_h / 2 << ")\" text-anchor=\"middle\">"
            << panel.y_label << "</text>\n";

        // Series polylines and legend.
        for (std::size_t si = 0; si < panel.series.size(); ++si) {
            const SvgSeries& s = panel.series[si];
            out << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.2\" points=\"";
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                out << num(sx(s.x[i])) << ',' << num(sy(s.y[i]));
                if (i + 1 < s.x.size()) out << ' ';
            }
            out << "\"/>\n";
            int ly = top + 14 * static_cast<int>(si);
            out << "<line x1=\"" << margin_l + plot_w + 8 << "\" y1=\"" << ly + 9 << "\" x2=\""
                << margin_l + plot_w + 26 << "\" y2=\"" << ly + 9 << "\" stroke=\"" << s.color
                << "\" stroke-width=\"2\"/>\n";
            out << "<text x=\"" << margin_l + plot_w + 30 << "\" y=\"" << ly + 12
                << "\" font-family=\"sans-serif\" font-size=\"10\">" << s.label << "</text>\n";
        }
    }

    out << "<text x=\"" << margin_l + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << x_label
        << "</text>\n";
    out << "</svg>\n";
}

}  // namespace flexblock
