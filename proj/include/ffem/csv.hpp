#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ffem {

using Cell = std::variant<double, std::string>;

/// Metadata lines (written with a leading "# "), a header row and data rows.
struct ResultTable {
    std::vector<std::string> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Doubles are written as %.17e so that re-reading is bit-exact.
std::string format_number(double v);
std::string to_csv(const ResultTable& table);
/// Throws IoError carrying the path on failure.
void write_csv(const ResultTable& table, const std::string& path);
/// Inverse of write_csv: cells that parse completely as numbers become doubles.
ResultTable read_csv(const std::string& path);

}  // namespace ffem
