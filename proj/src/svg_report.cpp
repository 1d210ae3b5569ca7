#include "collabmetrics/svg_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "collabmetrics/scaling.hpp"
#include "collabmetrics/textio.hpp"

namespace collabmetrics {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct LogAxes {
    double x_lo, x_hi, y_lo, y_hi;  // log10 ranges

    double px(double x_log) const {
        return kMargin + (x_log - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin);
    }
    double py(double y_log) const {
        return kHeight - kMargin - (y_log - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
    }
};

void draw_frame(std::ostringstream& svg, const LogAxes& ax) {
    svg << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\""
        << num(kWidth - 2 * kMargin) << "\" height=\"" << num(kHeight - 2 * kMargin)
        << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(std::ceil(ax.x_lo)); e <= static_cast<int>(std::floor(ax.x_hi)); ++e) {
        const double x = ax.px(e);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kHeight - kMargin) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(kMargin) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kMargin + 18)
            << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ax.y_lo)); e <= static_cast<int>(std::floor(ax.y_hi)); ++e) {
        const double y = ax.py(e);
        svg << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(kWidth - kMargin) << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << num(kMargin - 6) << "\" y=\"" << num(y + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
}

void draw_series(std::ostringstream& svg, const LogAxes& ax,
                 const std::vector<std::pair<double, double>>& pts, const char* color,
                 const char* marker) {
    if (pts.empty()) return;
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) svg << num(ax.px(x)) << ',' << num(ax.py(y)) << ' ';
    svg << "\"/>\n";
    for (const auto& [x, y] : pts) {
        if (marker[0] == 'c') {
            svg << "<circle cx=\"" << num(ax.px(x)) << "\" cy=\"" << num(ax.py(y))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        } else {
            svg << "<rect x=\"" << num(ax.px(x) - 3) << "\" y=\"" << num(ax.py(y) - 3)
                << "\" width=\"6\" height=\"6\" fill=\"" << color << "\"/>\n";
        }
    }
}

std::string svg_header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
}

} // namespace

std::string render_curve_svg(const std::string& curve_csv, const std::optional<std::string>& fit_csv) {
    std::istringstream curve_in(curve_csv);
    const BinnedCurve curve = read_curve_csv(curve_in);
    if (curve.bins.empty()) throw std::runtime_error("render_curve_svg: empty curve");

    std::optional<ScalingFit> fit;
    if (fit_csv) {
        std::istringstream fit_in(*fit_csv);
        fit = read_fit_csv(fit_in);
    }

    std::vector<std::pair<double, double>> means, medians;
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& b : curve.bins) {
        const double lx = std::log10(b.center);
        x_lo = std::min(x_lo, lx);
        x_hi = std::max(x_hi, lx);
        for (double v : {b.mean, b.median}) {
            if (v > 0.0) {
                const double ly = std::log10(v);
                y_lo = std::min(y_lo, ly);
                y_hi = std::max(y_hi, ly);
            }
        }
        if (b.mean > 0.0) means.emplace_back(lx, std::log10(b.mean));
        if (b.median > 0.0) medians.emplace_back(lx, std::log10(b.median));
    }
    if (means.empty() && medians.empty()) {
        throw std::runtime_error("render_curve_svg: no positive values to plot");
    }
    // pad ranges so points sit inside the frame
    const double x_pad = std::max(0.25, 0.05 * (x_hi - x_lo));
    const double y_pad = std::max(0.25, 0.05 * (y_hi - y_lo));
    LogAxes ax{x_lo - x_pad, x_hi + x_pad, y_lo - y_pad, y_hi + y_pad};

    std::ostringstream svg;
    svg << svg_header();
    draw_frame(svg, ax);
    if (fit) {
        // dotted line y = amplitude * x^exponent across the plotted x range
        const double y1 = std::log10(fit->amplitude) + fit->exponent * x_lo;
        const double y2 = std::log10(fit->amplitude) + fit->exponent * x_hi;
        svg << "<line x1=\"" << num(ax.px(x_lo)) << "\" y1=\"" << num(ax.py(y1)) << "\" x2=\""
            << num(ax.px(x_hi)) << "\" y2=\"" << num(ax.py(y2))
            << "\" stroke=\"blue\" stroke-dasharray=\"3,4\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << num(kWidth - kMargin - 4) << "\" y=\"" << num(kMargin + 16)
            << "\" font-size=\"12\" text-anchor=\"end\" fill=\"blue\">p = "
            << format_sig(fit->exponent, 4) << "</text>\n";
    }
    draw_series(svg, ax, means, "red", "circle");
    draw_series(svg, ax, medians, "magenta", "square");
    svg << "</svg>\n";
    return svg.str();
}

std::string render_histogram_svg(const std::string& profiles_csv, int bins_per_decade) {
    if (bins_per_decade < 1) throw std::invalid_argument("bins_per_decade must be >= 1");
    std::istringstream in(profiles_csv);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("render_histogram_svg: empty input");
    auto header = split_csv_line(line);
    auto col_it = std::find(header.begin(), header.end(), "mean_naut");
    if (col_it == header.end()) {
        throw std::runtime_error("render_histogram_svg: no mean_naut column");
    }
    const auto col = static_cast<std::size_t>(col_it - header.begin());

    std::map<int, std::size_t> counts;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() <= col) continue;
        const double naut = std::stod(fields[col]);
        if (naut < 1.0) continue;
        counts[static_cast<int>(std::floor(std::log10(naut) * bins_per_decade))]++;
    }
    if (counts.empty()) throw std::runtime_error("render_histogram_svg: no rows");

    std::size_t max_count = 0;
    for (const auto& [bin, n] : counts) max_count = std::max(max_count, n);
    const int bin_lo = counts.begin()->first;
    const int bin_hi = counts.rbegin()->first;

    LogAxes ax{static_cast<double>(bin_lo) / bins_per_decade,
               static_cast<double>(bin_hi + 1) / bins_per_decade, 0.0,
               static_cast<double>(max_count) * 1.05};
    std::ostringstream svg;
    svg << svg_header();
    svg << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\""
        << num(kWidth - 2 * kMargin) << "\" height=\"" << num(kHeight - 2 * kMargin)
        << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(std::ceil(ax.x_lo)); e <= static_cast<int>(std::floor(ax.x_hi)); ++e) {
        const double x = ax.px(e);
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kMargin + 18)
            << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (const auto& [bin, n] : counts) {
        const double x0 = ax.px(static_cast<double>(bin) / bins_per_decade);
        const double x1 = ax.px(static_cast<double>(bin + 1) / bins_per_decade);
        const double y = kHeight - kMargin -
                         (static_cast<double>(n) / ax.y_hi) * (kHeight - 2 * kMargin);
        svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(y) << "\" width=\"" << num(x1 - x0)
            << "\" height=\"" << num(kHeight - kMargin - y)
            << "\" fill=\"steelblue\" stroke=\"white\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace collabmetrics
