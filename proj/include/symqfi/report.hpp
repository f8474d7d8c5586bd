#pragma once

// Numeric tables and their CSV / text renderings. Numbers are written with
// 17 significant digits and '.' as the decimal separator regardless of locale.

#include <string>
#include <vector>

namespace symqfi {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_number(double v);

/// "# config_hash: <hash>" line, header line, data lines.
std::string to_csv(const Table& t, const std::string& config_hash);

/// Aligned columns for the terminal, 10 significant digits.
std::string to_text(const Table& t, const std::string& title, const std::string& config_hash);

}  // namespace symqfi
