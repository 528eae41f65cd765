#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bohm {

// Shortest text form that parses back to the same double (%.17g).
std::string format_g17(double v);

struct CsvColumn {
    std::string name;
    const std::vector<double>* values;
};

// UTF-8 CSV: one header row, comma separation, %.17g numerics, then the
// comment lines each prefixed with "# ". All columns must share a length.
void write_csv(std::ostream& out, const std::vector<CsvColumn>& columns,
               const std::vector<std::string>& comments = {});

}  // namespace bohm
