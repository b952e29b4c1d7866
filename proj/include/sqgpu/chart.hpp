#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sqgpu/table.hpp"

namespace sqgpu {

struct ChartSpec {
  std::string x_column;
  std::vector<std::string> y_columns;
  bool log_y = false;
  // Split each y column into one series per distinct value of this column.
  std::string group_by;
  // Keep only rows whose column renders to the given text.
  std::vector<std::pair<std::string, std::string>> where;
  std::string title;
};

/// Line chart as standalone SVG text. Throws kConfig for unknown columns and
/// kInvalidInput when no row survives filtering.
std::string render_chart_svg(const Table& table, const ChartSpec& spec);

/// Writes nothing when rendering fails.
void render_chart(const Table& table, const ChartSpec& spec, const std::string& path);

}  // namespace sqgpu
