#include "egowords/csv.hpp"

#include "egowords/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

namespace egowords::csv {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << escape(fields[i]);
    }
    os << '\n';
}

std::vector<std::string> parse_row(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw InputError("io", "missing CSV column '" + std::string(name) + "'");
}

Table read(std::istream& is, const std::string& source) {
    Table t;
    std::string line;
    if (!std::getline(is, line)) throw InputError("io", source + ": empty CSV file");
    t.header = parse_row(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto row = parse_row(line);
        if (row.size() != t.header.size())
            throw InputError("io", source + ": row has " + std::to_string(row.size()) +
                                       " fields, expected " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("io", "cannot open " + path);
    return read(in, path);
}

} // namespace egowords::csv
