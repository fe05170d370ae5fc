// table.hpp — numeric tables and their CSV form.
//
// CSV layout: a `# key=value,key=value` metadata line, a header line, then one
// line per row. Numbers are written in the shortest decimal form that parses
// back to the same double, so repeated runs give byte-identical files.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fano {

struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_meta(std::string key, std::string value) {
        metadata.emplace_back(std::move(key), std::move(value));
    }
    void add_meta(std::string key, double value);
};

// Shortest round-trip decimal; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double value);

// Inverse of format_double (accepts anything std::from_chars accepts plus the
// non-finite spellings). Throws Error{InvalidParameter} on malformed input.
double parse_double(std::string_view text);

void write_csv(std::ostream& os, const Table& table);
// Throws Error{IoFailure} when the file cannot be written.
void write_csv_file(const std::filesystem::path& path, const Table& table);

// Reads the layout produced by write_csv. Throws Error{InvalidParameter}.
Table read_csv(std::istream& is);

} // namespace fano
