#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <unistd.h>

#include "doctest.h"
#include "sqgpu/chart.hpp"
#include "sqgpu/error.hpp"
#include "sqgpu/experiments.hpp"
#include "sqgpu/rng.hpp"
#include "sqgpu/table.hpp"

using namespace sqgpu;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an sqgpu::Error");
  return ErrorKind::kIo;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sqgpu_report_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

bool same_bits(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return std::memcmp(&a, &b, sizeof a) == 0;
}

Table sample_csr_table() {
  CsrSweepSpec spec;
  spec.nodes = {8, 16};
  spec.burst_ratios = {0.2, 0.6};
  spec.trials = 10;
  Table t = csr_table(run_csr_sweep(spec));
  t.metadata = {{"tool", "sqgpu"}, {"seed", "42"}};
  return t;
}

}  // namespace

TEST_CASE("CSV rendering") {
  Table t;
  t.columns = {"M", "x", "name"};
  t.rows.push_back({std::int64_t{6}, 0.1, std::string("dedicated")});
  t.metadata = {{"tool", "sqgpu"}, {"version", "1.0.0"}};
  CHECK(render_table(t, TableFormat::kCsv) == "# tool=sqgpu version=1.0.0\nM,x,name\n6,0.10000000000000001,dedicated\n");

  Table header_only;
  header_only.columns = {"a", "b"};
  CHECK(render_table(header_only, TableFormat::kCsv) == "a,b\n");
  CHECK(parse_table("a,b\n", TableFormat::kCsv).rows.empty());

  Table ragged;
  ragged.columns = {"a", "b"};
  ragged.rows.push_back({std::int64_t{1}});
  CHECK(kind_of([&] { render_table(ragged, TableFormat::kCsv); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("JSON rendering") {
  Table t;
  t.columns = {"M", "csr", "level"};
  t.rows.push_back({std::int64_t{8}, 0.5, std::string("node")});
  t.metadata = {{"seed", "42"}};
  const std::string json = render_table(t, TableFormat::kJson);
  CHECK(json ==
        "{\n  \"metadata\": {\n    \"seed\": \"42\"\n  },\n  \"columns\": [\n    \"M\",\n    \"csr\",\n"
        "    \"level\"\n  ],\n  \"rows\": [\n    {\n      \"M\": 8,\n      \"csr\": 0.5,\n"
        "      \"level\": \"node\"\n    }\n  ]\n}\n");
  const Table back = parse_table(json, TableFormat::kJson);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK(back.metadata == t.metadata);
}

TEST_CASE("numbers survive a CSV and JSON round trip exactly") {
  Xoshiro256StarStar rng(2718);
  Table t;
  t.columns = {"i", "v"};
  for (std::int64_t i = 0; i < 2000; ++i) {
    double v = 0.0;
    const std::uint64_t bits = rng.next();
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) v = static_cast<double>(bits % 1000) / 7.0;
    t.rows.push_back({i, v});
  }
  t.rows.push_back({std::int64_t{-1}, std::numeric_limits<double>::min()});
  t.rows.push_back({std::int64_t{-2}, -0.0});
  t.rows.push_back({std::int64_t{-3}, 1e308});
  for (auto fmt_kind : {TableFormat::kCsv, TableFormat::kJson}) {
    const Table back = parse_table(render_table(t, fmt_kind), fmt_kind);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      CHECK(cell_as_double(back.rows[r][0]) == cell_as_double(t.rows[r][0]));
      CHECK(same_bits(cell_as_double(back.rows[r][1]), std::get<double>(t.rows[r][1])));
    }
  }
}

TEST_CASE("non-finite values") {
  Table t;
  t.columns = {"v"};
  t.rows.push_back({std::numeric_limits<double>::infinity()});
  t.rows.push_back({std::numeric_limits<double>::quiet_NaN()});
  const Table csv = parse_table(render_table(t, TableFormat::kCsv), TableFormat::kCsv);
  CHECK(std::isinf(cell_as_double(csv.rows[0][0])));
  CHECK(std::isnan(cell_as_double(csv.rows[1][0])));
  const Table json = parse_table(render_table(t, TableFormat::kJson), TableFormat::kJson);
  CHECK(std::isnan(cell_as_double(json.rows[1][0])));
}

TEST_CASE("satisfaction tables rewrite byte for byte") {
  TempDir dir;
  const Table t = sample_csr_table();
  for (const char* name : {"csr.csv", "csr.json"}) {
    const std::string first = dir.file(name);
    const std::string second = dir.file(std::string("again_") + name);
    write_table(t, format_for_path(first), first);
    const Table back = read_table(first);
    CHECK(back.columns.size() == 13);
    CHECK(back.rows.size() == 8);
    CHECK(back.metadata == t.metadata);
    write_table(back, format_for_path(second), second);
    CHECK(slurp(first) == slurp(second));
  }
}

TEST_CASE("table parsing errors") {
  CHECK(kind_of([] { parse_table("", TableFormat::kCsv); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { parse_table("a,b\n1\n", TableFormat::kCsv); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { parse_table("{\"columns\":[]}", TableFormat::kJson); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { parse_table("{oops", TableFormat::kJson); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { parse_table_format("xml"); }) == ErrorKind::kConfig);
  CHECK(kind_of([] { read_table("/nonexistent/t.csv"); }) == ErrorKind::kIo);
  CHECK(kind_of([] { write_table(Table{}, TableFormat::kCsv, "/nonexistent/dir/t.csv"); }) == ErrorKind::kIo);
  CHECK(format_for_path("a/b.json") == TableFormat::kJson);
  CHECK(format_for_path("a/b.csv") == TableFormat::kCsv);
  Table t;
  t.columns = {"a"};
  CHECK(kind_of([&] { t.column_index("b"); }) == ErrorKind::kConfig);
  CHECK(kind_of([] { cell_as_double(Cell{std::string("x")}); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("cost chart has one series per cost column") {
  CostSweepSpec spec;
  spec.nodes = {6};
  spec.qubits = IntRange{2, 60, 1}.values();
  const Table t = run_cost_sweep(spec);
  ChartSpec chart{"N", {"cost_sqgpu", "cost_entanglement", "cost_monolithic"}, true, "", {}, "cost"};
  const std::string svg = render_chart_svg(t, chart);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count_of(svg, "<polyline") == 3);
  CHECK(svg.find("cost_monolithic") != std::string::npos);
  CHECK(render_chart_svg(t, chart) == svg);
}

TEST_CASE("satisfaction chart groups by burst ratio after filtering") {
  const Table t = sample_csr_table();
  ChartSpec chart{"M", {"csr"}, false, "burst_ratio", {{"arch", "dedicated"}}, ""};
  const std::string svg = render_chart_svg(t, chart);
  CHECK(count_of(svg, "<polyline") == 2);
  CHECK(svg.find("burst_ratio=0.20000000000000001") != std::string::npos);
}

TEST_CASE("chart errors leave no file behind") {
  TempDir dir;
  const Table t = sample_csr_table();
  const std::string path = dir.file("chart.svg");

  ChartSpec filtered{"M", {"csr"}, false, "", {{"arch", "none"}}, ""};
  CHECK(kind_of([&] { render_chart(t, filtered, path); }) == ErrorKind::kInvalidInput);
  CHECK_FALSE(fs::exists(path));

  ChartSpec unknown{"M", {"nope"}, false, "", {}, ""};
  CHECK(kind_of([&] { render_chart(t, unknown, path); }) == ErrorKind::kConfig);
  CHECK_FALSE(fs::exists(path));

  ChartSpec none{"M", {}, false, "", {}, ""};
  CHECK(kind_of([&] { render_chart(t, none, path); }) == ErrorKind::kConfig);

  ChartSpec ok{"M", {"csr"}, false, "arch", {}, "CSR"};
  render_chart(t, ok, path);
  CHECK(fs::exists(path));
  CHECK(count_of(slurp(path), "<polyline") == 2);
}
