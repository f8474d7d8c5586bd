#include "symqfi/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace symqfi {

namespace {

std::string format_with(double v, int digits) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
    return {buf, res.ptr};
}

}  // namespace

std::string format_number(double v) { return format_with(v, 17); }

std::string to_csv(const Table& t, const std::string& config_hash) {
    std::string out = "# config_hash: " + config_hash + "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + format_number(row[c]);
        out += '\n';
    }
    return out;
}

std::string to_text(const Table& t, const std::string& title, const std::string& config_hash) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back(t.columns);
    for (const auto& row : t.rows) {
        std::vector<std::string> r;
        for (double v : row) r.push_back(format_with(v, 10));
        cells.push_back(std::move(r));
    }
    std::vector<std::size_t> width(t.columns.size(), 0);
    for (const auto& r : cells)
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());

    std::string out = title + "  [config " + config_hash + "]\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t c = 0; c < cells[i].size() && c < width.size(); ++c) {
            out += std::string(width[c] - cells[i][c].size() + (c ? 2 : 0), ' ');
            out += cells[i][c];
        }
        out += '\n';
        if (i == 0) {
            std::size_t total = 0;
            for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c ? 2 : 0);
            out += std::string(total, '-') + '\n';
        }
    }
    return out;
}

}  // namespace symqfi
