#include "bohm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace bohm {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 780.0;
constexpr double kTop = 45.0;
constexpr double kBottom = 445.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Largest of {1, 2, 5} * 10^k not exceeding the raw step.
double nice_step(double range) {
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {5.0, 2.0, 1.0})
        if (m * mag <= raw)
            return m * mag;
    return mag;
}

bool usable(const SvgSeries& s, size_t i) {
    if (s.mask && (*s.mask)[i])
        return false;
    return std::isfinite((*s.x)[i]) && std::isfinite((*s.y)[i]);
}

}  // namespace

void write_line_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<SvgSeries>& series) {
    if (series.empty())
        throw std::invalid_argument("write_line_chart: no series");

    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& s : series) {
        if (!s.x || !s.y || s.x->size() != s.y->size())
            throw std::invalid_argument("write_line_chart: malformed series");
        for (size_t i = 0; i < s.x->size(); ++i) {
            if (!usable(s, i))
                continue;
            x_lo = std::min(x_lo, (*s.x)[i]);
            x_hi = std::max(x_hi, (*s.x)[i]);
            y_lo = std::min(y_lo, (*s.y)[i]);
            y_hi = std::max(y_hi, (*s.y)[i]);
        }
    }
    if (x_lo > x_hi)
        throw std::invalid_argument("write_line_chart: no plottable points");
    if (x_hi - x_lo < 1e-12) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    const double y_pad = std::max(0.05 * (y_hi - y_lo), 1e-12);
    y_lo = std::min(0.0, y_lo - y_pad);
    y_hi += y_pad;

    const auto px = [&](double x) {
        return kLeft + (x - x_lo) / (x_hi - x_lo) * (kRight - kLeft);
    };
    const auto py = [&](double y) {
        return kBottom - (y - y_lo) / (y_hi - y_lo) * (kBottom - kTop);
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // gridlines and ticks
    const double xs = nice_step(x_hi - x_lo);
    const double ys = nice_step(y_hi - y_lo);
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (double v = std::ceil(x_lo / xs) * xs; v <= x_hi + 1e-9 * xs; v += xs) {
        const double p = px(v);
        out << "<line x1=\"" << num(p) << "\" y1=\"" << kTop << "\" x2=\"" << num(p)
            << "\" y2=\"" << kBottom << "\" stroke=\"#dddddd\"/>\n"
            << "<line x1=\"" << num(p) << "\" y1=\"" << kBottom << "\" x2=\"" << num(p)
            << "\" y2=\"" << kBottom + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << num(p) << "\" y=\"" << kBottom + 18
            << "\" text-anchor=\"middle\">" << num(v) << "</text>\n";
    }
    for (double v = std::ceil(y_lo / ys) * ys; v <= y_hi + 1e-9 * ys; v += ys) {
        const double p = py(v);
        out << "<line x1=\"" << kLeft << "\" y1=\"" << num(p) << "\" x2=\"" << kRight
            << "\" y2=\"" << num(p) << "\" stroke=\"#dddddd\"/>\n"
            << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(p) << "\" x2=\"" << kLeft
            << "\" y2=\"" << num(p) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(p + 4)
            << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
    }
    out << "</g>\n";

    // axes
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
        << kBottom << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n"
        << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (kTop + kBottom) / 2 << ")\">" << y_label
        << "</text>\n";

    // curves, broken at masked points
    for (const auto& s : series) {
        std::string points;
        auto flush = [&]() {
            if (!points.empty()) {
                out << "<polyline fill=\"none\" stroke=\"" << s.color
                    << "\" stroke-width=\"1.8\" points=\"" << points << "\"/>\n";
                points.clear();
            }
        };
        for (size_t i = 0; i < s.x->size(); ++i) {
            if (!usable(s, i)) {
                flush();
                continue;
            }
            points += num(px((*s.x)[i])) + "," + num(py((*s.y)[i])) + " ";
        }
        flush();
    }

    // legend, top right
    double ly = kTop + 10.0;
    for (const auto& s : series) {
        out << "<line x1=\"" << kRight - 150 << "\" y1=\"" << num(ly) << "\" x2=\""
            << kRight - 120 << "\" y2=\"" << num(ly) << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kRight - 112 << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
        ly += 18.0;
    }
    out << "</svg>\n";
}

}  // namespace bohm
