#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pegstab::csv {

// One parsed record; fields are unquoted/unescaped.
using Row = std::vector<std::string>;

struct Table {
    Row header;
    std::vector<Row> rows;  // data rows, header excluded
    // 1-based line number of each data row in the source file, for error
    // reporting (blank lines are skipped, so this is not simply i+2).
    std::vector<long> line_numbers;

    int column(std::string_view name) const;          // -1 when absent
    int require_column(std::string_view name) const;  // throws InputError
};

// Reads a comma-separated UTF-8 file with a header row. Handles quoted
// fields with embedded commas and doubled quotes; fields never span lines.
Table read_file(const std::string& path);
Table read_stream(std::istream& in, const std::string& origin);

Row split_line(std::string_view line);

// Quotes only when needed.
void write_row(std::ostream& out, const Row& row);

// Shortest decimal form that round-trips to the same double ("1.05", not
// "1.0500000000000000444..."). NaN renders as the empty string.
std::string format_double(double v);

double parse_double(std::string_view field, const std::string& context, long line_number);

}  // namespace pegstab::csv
