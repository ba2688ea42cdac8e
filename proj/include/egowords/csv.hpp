#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace egowords::csv {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// Quotes a field when it contains a delimiter, quote or newline.
std::string escape(std::string_view field);

void write_row(std::ostream& os, const std::vector<std::string>& fields);

// Splits one CSV record. Quoted fields may contain commas and doubled quotes
// but not newlines.
std::vector<std::string> parse_row(std::string_view line);

// Reads a whole file: the header row followed by data rows.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a header column; throws InputError when missing.
    std::size_t column(std::string_view name) const;
};

Table read(std::istream& is, const std::string& source);
Table read_file(const std::string& path);

} // namespace egowords::csv
