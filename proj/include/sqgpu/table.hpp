#pragma once

// Column-ordered result tables with CSV and JSON persistence. CSV numbers are
// written with 17 significant digits so that re-reading them is exact.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sqgpu {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Written as a leading "# key=value ..." line in CSV and a "metadata"
  // object in JSON.
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t column_index(const std::string& name) const;  // throws kConfig if absent
  bool has_column(const std::string& name) const noexcept;
};

enum class TableFormat { kCsv, kJson };

TableFormat parse_table_format(const std::string& text);
/// kJson for a ".json" suffix, kCsv otherwise.
TableFormat format_for_path(const std::string& path) noexcept;

std::string format_number(double value);
double cell_as_double(const Cell& cell);
std::string cell_to_string(const Cell& cell);

std::string render_table(const Table& table, TableFormat format);
void write_table(const Table& table, TableFormat format, const std::string& path);

Table parse_table(const std::string& text, TableFormat format);
Table read_table(const std::string& path);

}  // namespace sqgpu
