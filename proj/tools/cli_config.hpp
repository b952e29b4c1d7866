#pragma once

// Command-line configuration for the sqgpu tool. Values resolve as
// flag > JSON config file (--config, flat keys named after the flags) > default.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace sqgpu::cli {

inline constexpr const char* kToolName = "sqgpu";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Subcommand { kCalibrate, kCost, kQcount, kSimulate, kPlot, kGenerate, kSchedule };

const char* to_string(Subcommand sub) noexcept;

struct RunConfig {
  Subcommand subcommand = Subcommand::kCalibrate;

  // calibrate
  std::vector<std::string> points;  // "qubits:price"

  // shared grid flags
  std::string nodes;   // --M, int or first:last[:step]
  std::string qubits;  // --N
  std::string params_file;

  // cost
  std::optional<std::int64_t> partial;
  std::optional<std::int64_t> even;
  std::optional<std::int64_t> uneven;
  bool contour = false;

  // qcount
  std::string subcase;
  std::int64_t engaged_nodes = 0;  // --y
  std::string x_range;
  std::string r_range;

  // simulate / generate / schedule
  std::string arch = "both";
  std::string level = "qubit";
  std::string comm = "10M";  // --Q, absolute or "<k>M" for k per node
  std::vector<double> bursts;
  std::int64_t trials = 500;
  std::uint64_t seed = 42;
  std::uint64_t trial_index = 0;
  std::string inject;
  unsigned threads = 1;
  bool diagnostics = false;
  std::string model = "ideal";
  bool verbose = false;

  // plot
  std::string input;
  std::string x_column;
  std::vector<std::string> y_columns;
  bool log_y = false;
  std::string group_by;
  std::vector<std::string> where;  // "column=value"
  std::string title;

  std::string out;     // empty = stdout
  std::string format;  // csv|json, empty = from the output suffix

  /// Every resolved setting of the active subcommand (output path excluded).
  nlohmann::ordered_json resolved;
};

/// Raised for anything that should exit with status 2.
struct UsageError {
  std::string message;
  int exit_code = 2;  // 0 for --help / --version
};

/// Throws UsageError on unknown flags or keys, unparseable values, range
/// violations and conflicting flags.
RunConfig parse_config(int argc, const char* const* argv);
RunConfig parse_config(const std::vector<std::string>& args);  // without argv[0]

/// FNV-1a 64 of the canonical resolved-config JSON, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace sqgpu::cli
