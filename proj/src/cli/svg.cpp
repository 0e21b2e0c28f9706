#include "isoloc/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "isoloc/numkit/linalg.hpp"

namespace isoloc {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (hi - lo < 1e-12) {
            const double d = std::max(1.0, std::abs(lo)) * 0.05;
            lo -= d;
            hi += d;
        } else {
            const double d = 0.05 * (hi - lo);
            lo -= d;
            hi += d;
        }
    }
};

}  // namespace

std::string render_svg(const Chart& chart) {
    Range xr, yr;
    std::size_t points = 0;
    for (const auto& s : chart.series) {
        if (s.xs.size() != s.ys.size()) throw Error("render_svg: series " + s.name + " has mismatched lengths");
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
            xr.add(s.xs[i]);
            yr.add(s.ys[i]);
            ++points;
        }
    }
    if (points == 0) throw Error("render_svg: nothing to plot");
    xr.pad();
    yr.pad();
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto sy = [&](double y) { return kTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(chart.title) << "</text>\n";
    o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = xr.lo + (xr.hi - xr.lo) * k / 4.0;
        const double yv = yr.lo + (yr.hi - yr.lo) * k / 4.0;
        o << "<line x1=\"" << num(sx(xv)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(sx(xv)) << "\" y2=\""
          << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">"
          << tick_label(xv) << "</text>\n";
        o << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << num(kLeft) << "\" y2=\""
          << num(sy(yv)) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">"
          << tick_label(yv) << "</text>\n";
    }
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15) << "\" text-anchor=\"middle\">"
      << escape(chart.x_label) << "</text>\n";
    o << "<text transform=\"translate(16," << num(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(chart.y_label) << "</text>\n";

    for (std::size_t si = 0; si < chart.series.size(); ++si) {
        const auto& s = chart.series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
        if (s.style == ChartSeries::Style::points) {
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
                o << "<circle cx=\"" << num(sx(s.xs[i])) << "\" cy=\"" << num(sy(s.ys[i])) << "\" r=\"2.5\" fill=\""
                  << color << "\"/>\n";
            }
        } else {
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
            if (s.style == ChartSeries::Style::dashed) o << " stroke-dasharray=\"6,4\"";
            o << " points=\"";
            bool first = true;
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
                o << (first ? "" : " ") << num(sx(s.xs[i])) << "," << num(sy(s.ys[i]));
                first = false;
            }
            o << "\"/>\n";
        }
        const double ly = kTop + 14.0 + 16.0 * si;
        const double lx = kLeft + pw + 12;
        o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 18) << "\" y2=\""
          << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\""
          << (s.style == ChartSeries::Style::dashed ? " stroke-dasharray=\"4,3\"" : "") << "/>\n";
        o << "<text x=\"" << num(lx + 24) << "\" y=\"" << num(ly) << "\">" << escape(s.name) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace isoloc
