#include "fano/table.hpp"

#include "fano/core.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace fano {

void Table::add_meta(std::string key, double value) {
    metadata.emplace_back(std::move(key), format_double(value));
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
        throw Error(ErrorCode::InvalidParameter, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

void write_csv(std::ostream& os, const Table& table) {
    os << '#';
    for (std::size_t i = 0; i < table.metadata.size(); ++i) {
        os << (i == 0 ? " " : ",") << table.metadata[i].first << '=' << table.metadata[i].second;
    }
    os << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i == 0 ? "" : ",") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i == 0 ? "" : ",") << format_double(row[i]);
        }
        os << '\n';
    }
}

void write_csv_file(const std::filesystem::path& path, const Table& table) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    write_csv(out, table);
    out.flush();
    if (!out) throw Error(ErrorCode::IoFailure, "failed writing " + path.string());
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(line);
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

} // namespace

Table read_csv(std::istream& is) {
    Table table;
    std::string line;
    if (!std::getline(is, line) || line.empty() || line.front() != '#') {
        throw Error(ErrorCode::InvalidParameter, "missing '#' metadata line");
    }
    std::string meta = line.substr(1);
    if (!meta.empty() && meta.front() == ' ') meta.erase(0, 1);
    if (!meta.empty()) {
        for (const auto& kv : split(meta, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw Error(ErrorCode::InvalidParameter, "metadata entry without '=': " + kv);
            }
            table.add_meta(kv.substr(0, eq), kv.substr(eq + 1));
        }
    }
    if (!std::getline(is, line)) throw Error(ErrorCode::InvalidParameter, "missing header line");
    table.columns = split(line, ',');
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != table.columns.size()) {
            throw Error(ErrorCode::InvalidParameter, "row width does not match header");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_double(c));
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace fano
