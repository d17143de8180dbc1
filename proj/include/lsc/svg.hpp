#pragma once

// Minimal native SVG line/scatter charts: fixed 960x600 canvas, one colour
// per series from a fixed palette.

#include "lsc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace lsc {

struct ChartSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ChartSeries> series;
    bool lines = true;
};

inline constexpr std::array<std::string_view, 8> chart_palette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                               "#9467bd", "#8c564b", "#e377c2", "#17becf"};

inline std::string xml_escape(std::string_view s) {
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

namespace svg_detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Round axis span outward to "nice" tick steps.
inline std::pair<double, double> nice_range(double lo, double hi) {
    if (!(hi > lo)) {
        lo -= 1;
        hi += 1;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step};
}

}  // namespace svg_detail

inline std::string render_svg(const Chart& chart) {
    constexpr double width = 960, height = 600;
    constexpr double left = 90, right = 200, top = 50, bottom = 70;
    const double pw = width - left - right, ph = height - top - bottom;

    double x0 = std::numeric_limits<double>::max(), x1 = std::numeric_limits<double>::lowest();
    double y0 = x0, y1 = x1;
    for (const auto& s : chart.series) {
        for (auto [x, y] : s.points) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (x0 > x1) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    std::tie(x0, x1) = svg_detail::nice_range(x0, x1);
    std::tie(y0, y1) = svg_detail::nice_range(std::min(0.0, y0), y1);
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };
    using svg_detail::num;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 960 600\" width=\"960\" height=\"600\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"600\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(width / 2) + "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" +
           xml_escape(chart.title) + "</text>\n";
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x0 + (x1 - x0) * i / 5.0, yv = y0 + (y1 - y0) * i / 5.0;
        out += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(top + ph + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + format_number(xv) + "</text>\n";
        out += "<text x=\"" + num(left - 8) + "\" y=\"" + num(sy(yv) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + format_number(yv) + "</text>\n";
        out += "<line x1=\"" + num(left) + "\" y1=\"" + num(sy(yv)) + "\" x2=\"" + num(left + pw) + "\" y2=\"" +
               num(sy(yv)) + "\" stroke=\"#dddddd\"/>\n";
    }
    out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(height - 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + xml_escape(chart.x_label) +
           "</text>\n";
    out += "<text x=\"20\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\" transform=\"rotate(-90 20 " + num(top + ph / 2) + ")\">" + xml_escape(chart.y_label) +
           "</text>\n";

    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const auto& s = chart.series[k];
        const std::string colour(chart_palette[k % chart_palette.size()]);
        if (chart.lines && s.points.size() > 1) {
            out += "<polyline fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"2\" points=\"";
            for (std::size_t i = 0; i < s.points.size(); ++i) {
                if (i) out += ' ';
                out += num(sx(s.points[i].first)) + "," + num(sy(s.points[i].second));
            }
            out += "\"/>\n";
        }
        for (auto [x, y] : s.points) {
            out += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"4\" fill=\"" + colour + "\"/>\n";
        }
        const double ly = top + 16 + 20.0 * static_cast<double>(k);
        out += "<rect x=\"" + num(left + pw + 16) + "\" y=\"" + num(ly - 10) + "\" width=\"12\" height=\"12\" fill=\"" +
               colour + "\"/>\n";
        out += "<text x=\"" + num(left + pw + 34) + "\" y=\"" + num(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(s.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace lsc
