#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prunedec {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;  // (x, y); y must be > 0 to appear
};

namespace detail_svg {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return colors[i % 8];
}

}  // namespace detail_svg

// BER-vs-SNR plot: linear x, log10 y, one polyline per series. Pure text
// output, bit-identical across reruns. Points with y <= 0 (zero measured
// errors) cannot sit on a log axis and are omitted.
inline void write_ber_svg(const std::string& path, const std::string& title, const std::string& x_label,
                          const std::vector<PlotSeries>& series) {
    constexpr double width = 760, height = 480;
    constexpr double left = 80, right = 600, top = 48, bottom = 420;

    double xmin = 0, xmax = 1, ymin_log = -1, ymax_log = 0;
    bool any = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!(y > 0.0)) continue;
            if (!any) {
                xmin = xmax = x;
                ymin_log = ymax_log = std::log10(y);
                any = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin_log = std::min(ymin_log, std::log10(y));
                ymax_log = std::max(ymax_log, std::log10(y));
            }
        }
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    double dec_lo = std::floor(ymin_log);
    double dec_hi = std::ceil(ymax_log);
    if (dec_hi == dec_lo) dec_hi += 1;

    const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
    const auto py = [&](double y) {
        return top + (dec_hi - std::log10(y)) / (dec_hi - dec_lo) * (bottom - top);
    };

    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("svg: cannot open for writing: " + path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << detail_svg::num((left + right) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    // Frame and y decade grid (labels carry the exact decade value).
    os << "<rect x=\"" << detail_svg::num(left) << "\" y=\"" << detail_svg::num(top) << "\" width=\""
       << detail_svg::num(right - left) << "\" height=\"" << detail_svg::num(bottom - top)
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double d = dec_lo; d <= dec_hi + 1e-9; d += 1.0) {
        const double y = py(std::pow(10.0, d));
        os << "<line x1=\"" << detail_svg::num(left) << "\" y1=\"" << detail_svg::num(y) << "\" x2=\""
           << detail_svg::num(right) << "\" y2=\"" << detail_svg::num(y)
           << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof lab, "1e%+03d", static_cast<int>(d));
        os << "<text class=\"ytick\" x=\"" << detail_svg::num(left - 8) << "\" y=\"" << detail_svg::num(y)
           << "\" dominant-baseline=\"middle\" text-anchor=\"end\" font-family=\"sans-serif\" "
           << "font-size=\"11\">" << lab << "</text>\n";
    }

    // x ticks: a handful of round steps.
    const double span = xmax - xmin;
    double step = std::pow(10.0, std::floor(std::log10(span / 4)));
    if (span / step > 8) step *= 2;
    if (span / step > 8) step *= 2.5;
    for (double x = std::ceil(xmin / step) * step; x <= xmax + 1e-9; x += step) {
        os << "<line x1=\"" << detail_svg::num(px(x)) << "\" y1=\"" << detail_svg::num(bottom) << "\" x2=\""
           << detail_svg::num(px(x)) << "\" y2=\"" << detail_svg::num(bottom + 5) << "\" stroke=\"black\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof lab, "%g", x);
        os << "<text class=\"xtick\" x=\"" << detail_svg::num(px(x)) << "\" y=\""
           << detail_svg::num(bottom + 18) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           << "font-size=\"11\">" << lab << "</text>\n";
    }
    os << "<text x=\"" << detail_svg::num((left + right) / 2) << "\" y=\"" << detail_svg::num(bottom + 38)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label << "</text>\n";
    os << "<text x=\"20\" y=\"" << detail_svg::num((top + bottom) / 2)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 20 "
       << detail_svg::num((top + bottom) / 2) << ")\">BER</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = detail_svg::palette(si);
        std::string pts;
        for (const auto& [x, y] : s.points) {
            if (!(y > 0.0)) continue;
            if (!pts.empty()) pts += ' ';
            pts += detail_svg::num(px(x)) + "," + detail_svg::num(py(y));
        }
        os << "<polyline class=\"series\" data-name=\"" << s.name << "\" points=\"" << pts
           << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        for (const auto& [x, y] : s.points) {
            if (!(y > 0.0)) continue;
            os << "<circle cx=\"" << detail_svg::num(px(x)) << "\" cy=\"" << detail_svg::num(py(y))
               << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        const double ly = top + 16 + 16 * static_cast<double>(si);
        os << "<line x1=\"" << detail_svg::num(right + 10) << "\" y1=\"" << detail_svg::num(ly - 4)
           << "\" x2=\"" << detail_svg::num(right + 30) << "\" y2=\"" << detail_svg::num(ly - 4)
           << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        os << "<text x=\"" << detail_svg::num(right + 34) << "\" y=\"" << detail_svg::num(ly)
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.name << "</text>\n";
    }
    os << "</svg>\n";
    if (!os) throw std::runtime_error("svg: write failed: " + path);
}

}  // namespace prunedec
