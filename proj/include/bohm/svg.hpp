#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bohm {

struct SvgSeries {
    std::string label;
    std::string color;
    const std::vector<double>* x = nullptr;
    const std::vector<double>* y = nullptr;
    // optional: nonzero entries are omitted and break the polyline
    const std::vector<std::uint8_t>* mask = nullptr;
};

// Minimal standalone SVG 1.1 line chart, fixed 800x500 viewport: axes,
// ticks, legend, one polyline per series.
void write_line_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<SvgSeries>& series);

}  // namespace bohm
