#include "sqgpu/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "sqgpu/error.hpp"

namespace sqgpu {
namespace {

using ordered_json = nlohmann::ordered_json;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Cell parse_cell(const std::string& text) {
  std::int64_t as_int = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (auto [p, ec] = std::from_chars(first, last, as_int); ec == std::errc() && p == last) {
    // "-0" only comes from a negative-zero double.
    if (as_int == 0 && text.front() == '-') return -0.0;
    return as_int;
  }
  // strtod accepts nan/inf spellings that from_chars on GCC 11 lacks for double.
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (!text.empty() && end == text.c_str() + text.size()) return v;
  return text;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

ordered_json cell_to_json(const Cell& cell) {
  return std::visit([](const auto& v) { return ordered_json(v); }, cell);
}

Cell json_to_cell(const ordered_json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return j.get<double>();
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) return j.get<std::string>();
  throw Error(ErrorKind::kInvalidInput, "unsupported JSON cell " + j.dump());
}

}  // namespace

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw Error(ErrorKind::kConfig, "unknown column '" + name + "'");
}

bool Table::has_column(const std::string& name) const noexcept {
  for (const auto& c : columns) {
    if (c == name) return true;
  }
  return false;
}

TableFormat parse_table_format(const std::string& text) {
  if (text == "csv") return TableFormat::kCsv;
  if (text == "json") return TableFormat::kJson;
  throw Error(ErrorKind::kConfig, "format must be csv or json");
}

TableFormat format_for_path(const std::string& path) noexcept {
  return ends_with(path, ".json") ? TableFormat::kJson : TableFormat::kCsv;
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

double cell_as_double(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  throw Error(ErrorKind::kInvalidInput, "non-numeric cell '" + std::get<std::string>(cell) + "'");
}

std::string cell_to_string(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  return std::get<std::string>(cell);
}

std::string render_table(const Table& table, TableFormat format) {
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw Error(ErrorKind::kInvalidInput, "row width does not match the column count");
    }
  }
  if (format == TableFormat::kCsv) {
    std::string out;
    if (!table.metadata.empty()) {
      out += '#';
      for (const auto& [k, v] : table.metadata) out += fmt::format(" {}={}", k, v);
      out += '\n';
    }
    out += fmt::format("{}\n", fmt::join(table.columns, ","));
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += cell_to_string(row[i]);
      }
      out += '\n';
    }
    return out;
  }

  ordered_json doc;
  doc["metadata"] = ordered_json::object();
  for (const auto& [k, v] : table.metadata) doc["metadata"][k] = v;
  doc["columns"] = table.columns;
  doc["rows"] = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_to_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

void write_table(const Table& table, TableFormat format, const std::string& path) {
  const std::string text = render_table(table, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path);
}

Table parse_table(const std::string& text, TableFormat format) {
  Table table;
  if (format == TableFormat::kJson) {
    ordered_json doc;
    try {
      doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::kInvalidInput, e.what());
    }
    if (!doc.contains("columns") || !doc.contains("rows")) {
      throw Error(ErrorKind::kInvalidInput, "table JSON needs columns and rows");
    }
    table.columns = doc["columns"].get<std::vector<std::string>>();
    if (doc.contains("metadata")) {
      for (const auto& [k, v] : doc["metadata"].items()) {
        table.metadata.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
    for (const auto& obj : doc["rows"]) {
      std::vector<Cell> row;
      for (const auto& col : table.columns) {
        if (!obj.contains(col)) throw Error(ErrorKind::kInvalidInput, "row lacks column " + col);
        row.push_back(json_to_cell(obj[col]));
      }
      table.rows.push_back(std::move(row));
    }
    return table;
  }

  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream meta(line.substr(1));
      std::string kv;
      while (meta >> kv) {
        const auto eq = kv.find('=');
        if (eq != std::string::npos) table.metadata.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
      }
      continue;
    }
    if (!have_header) {
      table.columns = split_csv_line(line);
      have_header = true;
      continue;
    }
    auto fields = split_csv_line(line);
    if (fields.size() != table.columns.size()) {
      throw Error(ErrorKind::kInvalidInput, "CSV row width mismatch: " + line);
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_cell(f));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw Error(ErrorKind::kInvalidInput, "CSV has no header row");
  return table;
}

Table read_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str(), format_for_path(path));
}

}  // namespace sqgpu
