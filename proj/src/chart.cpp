#include "sqgpu/chart.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "sqgpu/error.hpp"

namespace sqgpu {
namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 80;
constexpr double kRight = 200;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr int kTicks = 5;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) { return fmt::format("{:.4g}", v); }

}  // namespace

std::string render_chart_svg(const Table& table, const ChartSpec& spec) {
  if (spec.y_columns.empty()) throw Error(ErrorKind::kConfig, "chart needs at least one y column");
  const std::size_t x_col = table.column_index(spec.x_column);
  std::vector<std::size_t> y_cols;
  for (const auto& y : spec.y_columns) y_cols.push_back(table.column_index(y));
  const bool grouped = !spec.group_by.empty();
  const std::size_t group_col = grouped ? table.column_index(spec.group_by) : 0;
  std::vector<std::pair<std::size_t, std::string>> filters;
  for (const auto& [col, value] : spec.where) filters.emplace_back(table.column_index(col), value);

  // Series keyed by (y column, group text) in first-appearance order.
  std::vector<Series> series;
  std::map<std::string, std::size_t> series_index;
  for (const auto& row : table.rows) {
    const bool keep = std::all_of(filters.begin(), filters.end(), [&](const auto& f) {
      return cell_to_string(row[f.first]) == f.second;
    });
    if (!keep) continue;
    const double x = cell_as_double(row[x_col]);
    for (std::size_t i = 0; i < y_cols.size(); ++i) {
      std::string label = spec.y_columns[i];
      if (grouped) label += " " + spec.group_by + "=" + cell_to_string(row[group_col]);
      auto [it, inserted] = series_index.try_emplace(label, series.size());
      if (inserted) series.push_back({label, {}});
      double y = cell_as_double(row[y_cols[i]]);
      if (spec.log_y) y = y > 0.0 ? std::log10(y) : std::numeric_limits<double>::quiet_NaN();
      if (std::isfinite(x) && std::isfinite(y)) series[it->second].points.emplace_back(x, y);
    }
  }
  std::size_t total = 0;
  for (const auto& s : series) total += s.points.size();
  if (total == 0) throw Error(ErrorKind::kInvalidInput, "nothing to plot");

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max == x_min) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto sy = [&](double y) { return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, kHeight);
  if (!spec.title.empty()) {
    svg += fmt::format("<text x=\"{:.2f}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                       kLeft + plot_w / 2, escape(spec.title));
  }
  svg += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
      kLeft, kTop, plot_w, plot_h);

  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / kTicks;
    const double fy = y_min + (y_max - y_min) * i / kTicks;
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>"
        "<text x=\"{0:.2f}\" y=\"{3:.2f}\" text-anchor=\"middle\">{4}</text>\n",
        sx(fx), kTop + plot_h, kTop + plot_h + 5, kTop + plot_h + 20, tick_label(fx));
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>"
        "<text x=\"{3:.2f}\" y=\"{4:.2f}\" text-anchor=\"end\">{5}</text>\n",
        kLeft - 5, sy(fy), kLeft, kLeft - 8, sy(fy) + 4, tick_label(fy));
  }

  std::string y_label = fmt::format("{}", fmt::join(spec.y_columns, ", "));
  if (spec.log_y) y_label = "lg(" + y_label + ")";
  svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + plot_w / 2, kHeight - 15, escape(spec.x_column));
  svg += fmt::format(
      "<text x=\"20\" y=\"{0:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0:.2f})\">{1}</text>\n",
      kTop + plot_h / 2, escape(y_label));

  for (std::size_t i = 0; i < series.size(); ++i) {
    auto pts = series[i].points;
    std::stable_sort(pts.begin(), pts.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    const char* color = kPalette[i % std::size(kPalette)];
    std::string coords;
    for (const auto& [x, y] : pts) coords += fmt::format("{:.2f},{:.2f} ", sx(x), sy(y));
    if (!coords.empty()) coords.pop_back();
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n",
                       color, coords);
    const double ly = kTop + 10 + 18 * static_cast<double>(i);
    svg += fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" stroke-width=\"2\"/>"
        "<text x=\"{4:.2f}\" y=\"{5:.2f}\">{6}</text>\n",
        kLeft + plot_w + 15, ly, kLeft + plot_w + 40, color, kLeft + plot_w + 45, ly + 4,
        escape(series[i].label));
  }
  svg += "</svg>\n";
  return svg;
}

void render_chart(const Table& table, const ChartSpec& spec, const std::string& path) {
  const std::string svg = render_chart_svg(table, spec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  out << svg;
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path);
}

}  // namespace sqgpu
