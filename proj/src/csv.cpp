#include "bohm/csv.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace bohm {

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<CsvColumn>& columns,
               const std::vector<std::string>& comments) {
    if (columns.empty())
        throw std::invalid_argument("write_csv: no columns");
    const size_t rows = columns.front().values->size();
    for (const auto& c : columns)
        if (c.values->size() != rows)
            throw std::invalid_argument("write_csv: column length mismatch");

    for (size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c].name;
    out << "\n";
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c)
            out << (c ? "," : "") << format_g17((*columns[c].values)[r]);
        out << "\n";
    }
    for (const auto& comment : comments)
        out << "# " << comment << "\n";
}

}  // namespace bohm
