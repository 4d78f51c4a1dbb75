#include "kerrsync/table.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "kerrsync/version.hpp"

namespace kerrsync {

namespace {

std::string format_cell(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

double parse_cell(const std::string& cell, const std::string& path, std::size_t line) {
    if (cell == "nan") return std::nan("");
    // from_chars, unlike stod, accepts subnormal values instead of
    // reporting them as out of range.
    double v = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    auto [end, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || end != last)
        throw std::runtime_error(path + ":" + std::to_string(line) + ": bad cell '" + cell + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string hex_digest(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

void write_csv(const ResultTable& table, const std::string& path) {
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size())
            throw std::invalid_argument("row width does not match column count");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << format_cell(row[c]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ResultTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    ResultTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (auto& name : split_csv_line(line)) table.columns.push_back(name);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != table.columns.size())
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(table.columns.size()) + " cells, got " +
                                     std::to_string(cells.size()));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) row.push_back(parse_cell(cell, path, line_no));
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_metadata(const ResultTable& table, const std::string& path) {
    nlohmann::json meta;
    meta["tool_version"] = tool_version;
    meta["mode"] = table.mode;
    meta["seed"] = table.seed;
    meta["config"] = table.config_canonical;
    meta["config_hash"] = hex_digest(table.config_digest);
    meta["runtime_seconds"] = table.runtime_seconds;
    meta["threads"] = table.threads_used;
    meta["rows"] = table.rows.size();
    meta["columns"] = table.columns;
    meta["point_errors"] = table.point_errors;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    meta["generated_at"] = stamp;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << meta.dump(2) << '\n';
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

bool same_numbers(const ResultTable& a, const ResultTable& b) {
    if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (a.rows[r].size() != b.rows[r].size()) return false;
        for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
            const double x = a.rows[r][c];
            const double y = b.rows[r][c];
            const bool both_nan = std::isnan(x) && std::isnan(y);
            if (!both_nan && x != y) return false;
        }
    }
    return true;
}

}  // namespace kerrsync
