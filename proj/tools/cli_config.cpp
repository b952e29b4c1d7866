#include "cli_config.hpp"

#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "sqgpu/error.hpp"
#include "sqgpu/experiments.hpp"

namespace sqgpu::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

const std::regex kCommPattern(R"(^(\d+)(M?)$)");

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

std::string scalar_text(const ordered_json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw UsageError{"config key '" + key + "' must be a string, number, boolean or list"};
}

// Turns flat config keys into flag tokens for the keys not already given as
// flags, so CLI11 applies the usual parsing and validation to both sources.
std::vector<std::string> config_tokens(const CLI::App& sub, const std::string& path,
                                       const std::vector<std::string>& args) {
  std::ifstream in(path);
  if (!in) throw UsageError{"cannot read config file " + path};
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError{"config file " + path + ": " + e.what()};
  }
  if (!doc.is_object()) throw UsageError{"config file must hold a JSON object"};

  std::vector<std::string> tokens;
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = "--" + key;
    const CLI::Option* opt = key == "config" ? nullptr : sub.get_option_no_throw(flag);
    if (opt == nullptr) throw UsageError{"unknown config key '" + key + "' for " + sub.get_name()};
    if (given_on_command_line(args, flag)) continue;
    if (value.is_boolean()) {
      if (opt->get_expected_min() != 0) throw UsageError{"config key '" + key + "' is not a switch"};
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& item : value) {
        tokens.push_back(flag);
        tokens.push_back(scalar_text(item, key));
      }
    } else {
      tokens.push_back(flag);
      tokens.push_back(scalar_text(value, key));
    }
  }
  return tokens;
}

void require_range(const std::string& flag, const std::string& text) {
  try {
    parse_int_list(text);
  } catch (const Error& e) {
    throw UsageError{flag + ": " + e.what()};
  }
}

}  // namespace

const char* to_string(Subcommand sub) noexcept {
  switch (sub) {
    case Subcommand::kCalibrate: return "calibrate";
    case Subcommand::kCost: return "cost";
    case Subcommand::kQcount: return "qcount";
    case Subcommand::kSimulate: return "simulate";
    case Subcommand::kPlot: return "plot";
    case Subcommand::kGenerate: return "generate";
    case Subcommand::kSchedule: return "schedule";
  }
  return "?";
}

RunConfig parse_config(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_config(args);
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  cfg.threads = default_thread_count();
  std::string config_file;

  CLI::App app{"Cost model and burst-communication simulator for shared versus dedicated "
               "communication-qubit architectures",
               kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  const auto add_common_output = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON file with flat keys named after the flags");
    sub->add_option("--out", cfg.out, "Output path (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json (default: from --out suffix)")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* calibrate = app.add_subcommand("calibrate", "Fit epsilon and a to two (qubits, price) points");
  calibrate->add_option("--point", cfg.points, "qubits:price (give exactly twice)")->required();
  add_common_output(calibrate);

  auto* cost = app.add_subcommand("cost", "Tabulate C_S, C_E and C_0 over an (M, N) grid");
  cost->add_option("--M", cfg.nodes, "Node count or range first:last[:step]")->required();
  cost->add_option("--N", cfg.qubits, "Qubits per node, int or range")->required();
  auto* partial = cost->add_option("--partial", cfg.partial, "S-QGPU with R simultaneous gates")
                      ->check(CLI::PositiveNumber);
  auto* even = cost->add_option("--even", cfg.even, "Entanglement subcase E with x qubits per node")
                   ->check(CLI::PositiveNumber);
  auto* uneven = cost->add_option("--uneven", cfg.uneven, "Entanglement subcase U with R gates")
                     ->check(CLI::PositiveNumber);
  even->excludes(uneven);
  auto* contour = cost->add_flag("--contour", cfg.contour, "Emit log10 costs (contour grids)");
  contour->excludes(partial)->excludes(even)->excludes(uneven);
  cost->add_option("--params", cfg.params_file, "JSON with epsilon, a, b, d")->check(CLI::ExistingFile);
  add_common_output(cost);

  auto* qcount = app.add_subcommand("qcount", "Communication-qubit budgets Q_E and Q_S");
  qcount->add_option("--subcase", cfg.subcase, "E (even) or U (uneven)")
      ->required()
      ->check(CLI::IsMember({"E", "U"}));
  qcount->add_option("--M", cfg.nodes, "Node count")->required();
  qcount->add_option("--y", cfg.engaged_nodes, "Engaged nodes (subcase E)");
  qcount->add_option("--x", cfg.x_range, "Qubits per engaged node, range (subcase E)");
  qcount->add_option("--N", cfg.qubits, "Qubits per node (subcase U)");
  qcount->add_option("--R", cfg.r_range, "Simultaneous gates, range (subcase U)");
  add_common_output(qcount);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo satisfaction ratio sweep");
  simulate->add_option("--arch", cfg.arch, "dedicated, shared or both")
      ->check(CLI::IsMember({"dedicated", "shared", "both"}));
  simulate->add_option("--level", cfg.level, "qubit or node")->check(CLI::IsMember({"qubit", "node"}));
  simulate->add_option("--M", cfg.nodes, "Node counts, int or range")->required();
  cfg.qubits = "50";
  simulate->add_option("--N", cfg.qubits, "Qubits per node")->capture_default_str();
  simulate->add_option("--Q", cfg.comm, "Communication qubits: absolute, or <k>M for k per node")->capture_default_str();
  auto* burst = simulate->add_option("--burst", cfg.bursts, "Comma-separated burst ratios")
                    ->delimiter(',')
                    ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--trials", cfg.trials, "Trials per grid point")->capture_default_str()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  auto* inject = simulate->add_option("--inject", cfg.inject, "Replay a batch JSONL every trial")
                     ->check(CLI::ExistingFile);
  inject->excludes(burst);
  simulate->add_option("--threads", cfg.threads, "Worker threads (default: SQGPU_THREADS)")
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--diagnostics", cfg.diagnostics, "Append diagnostic columns");
  add_common_output(simulate);

  auto* generate = app.add_subcommand("generate", "Write one sampled batch as JSON lines");
  generate->add_option("--level", cfg.level, "qubit or node")->check(CLI::IsMember({"qubit", "node"}));
  generate->add_option("--M", cfg.nodes, "Node count")->required();
  generate->add_option("--N", cfg.qubits, "Qubits per node")->capture_default_str();
  generate->add_option("--burst", cfg.bursts, "Burst ratio")->required()->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  generate->add_option("--trial", cfg.trial_index, "Trial index for the derived stream")->capture_default_str();
  add_common_output(generate);

  auto* schedule = app.add_subcommand("schedule", "Schedule a batch JSONL under one resource model");
  schedule->add_option("--inject", cfg.inject, "Batch JSONL")->required()->check(CLI::ExistingFile);
  schedule->add_option("--model", cfg.model, "dedicated, shared or ideal")->capture_default_str()
      ->check(CLI::IsMember({"dedicated", "shared", "ideal"}));
  schedule->add_option("--M", cfg.nodes, "Node count")->required();
  schedule->add_option("--N", cfg.qubits, "Qubits per node")->capture_default_str();
  schedule->add_option("--Q", cfg.comm, "Communication qubits")->capture_default_str();
  schedule->add_flag("--verbose", cfg.verbose, "Include per-step request lists");
  add_common_output(schedule);

  auto* plot = app.add_subcommand("plot", "Render a result table as an SVG line chart");
  plot->add_option("--in", cfg.input, "CSV or JSON table")->required()->check(CLI::ExistingFile);
  plot->add_option("--x", cfg.x_column, "x column")->required();
  plot->add_option("--y", cfg.y_columns, "y columns")->required()->delimiter(',');
  plot->add_flag("--logy", cfg.log_y, "log10 y axis");
  plot->add_option("--group", cfg.group_by, "One series per distinct value of this column");
  plot->add_option("--where", cfg.where, "column=value row filter (repeatable)");
  plot->add_option("--title", cfg.title, "Chart title");
  add_common_output(plot);
  plot->get_option("--out")->required();

  // The subcommand is the first non-flag token; a config file is merged in
  // before parsing so that CLI11 validates it like flags.
  std::vector<std::string> full = args;
  if (!args.empty()) {
    CLI::App* active = nullptr;
    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) {
      if (sub->get_name() == args.front()) active = sub;
    }
    std::string file;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) file = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) file = args[i].substr(9);
    }
    if (active != nullptr && !file.empty()) {
      const auto extra = config_tokens(*active, file, args);
      full.insert(full.begin() + 1, extra.begin(), extra.end());
    }
  }

  std::vector<const char*> argv{kToolName};
  for (const auto& a : full) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    throw UsageError{out.str() + err.str(), code == 0 ? 0 : 2};
  }

  ordered_json r;
  if (*calibrate) {
    cfg.subcommand = Subcommand::kCalibrate;
    if (cfg.points.size() != 2) throw UsageError{"calibrate needs exactly two --point values"};
    for (const auto& p : cfg.points) {
      if (!std::regex_match(p, std::regex(R"(^\d+:[0-9.eE+\-]+$)"))) {
        throw UsageError{"--point must look like qubits:price, got '" + p + "'"};
      }
    }
    r["point"] = cfg.points;
  } else if (*cost) {
    cfg.subcommand = Subcommand::kCost;
    require_range("--M", cfg.nodes);
    require_range("--N", cfg.qubits);
    r["M"] = cfg.nodes;
    r["N"] = cfg.qubits;
    if (cfg.partial) r["partial"] = *cfg.partial;
    if (cfg.even) r["even"] = *cfg.even;
    if (cfg.uneven) r["uneven"] = *cfg.uneven;
    r["contour"] = cfg.contour;
    r["params"] = cfg.params_file;
  } else if (*qcount) {
    cfg.subcommand = Subcommand::kQcount;
    require_range("--M", cfg.nodes);
    r["subcase"] = cfg.subcase;
    r["M"] = cfg.nodes;
    if (cfg.subcase == "E") {
      if (cfg.x_range.empty() || cfg.engaged_nodes < 1) {
        throw UsageError{"subcase E needs --y and --x"};
      }
      if (!cfg.r_range.empty()) throw UsageError{"--R belongs to subcase U"};
      require_range("--x", cfg.x_range);
      r["y"] = cfg.engaged_nodes;
      r["x"] = cfg.x_range;
    } else {
      if (cfg.r_range.empty() || cfg.qubits.empty()) throw UsageError{"subcase U needs --N and --R"};
      if (!cfg.x_range.empty()) throw UsageError{"--x belongs to subcase E"};
      require_range("--R", cfg.r_range);
      require_range("--N", cfg.qubits);
      r["N"] = cfg.qubits;
      r["R"] = cfg.r_range;
    }
  } else if (*simulate || *generate || *schedule) {
    cfg.subcommand = *simulate ? Subcommand::kSimulate
                               : (*generate ? Subcommand::kGenerate : Subcommand::kSchedule);
    require_range("--M", cfg.nodes);
    require_range("--N", cfg.qubits);
    if (!std::regex_match(cfg.comm, kCommPattern)) {
      throw UsageError{"--Q must be an integer or <k>M, got '" + cfg.comm + "'"};
    }
    if (cfg.subcommand == Subcommand::kSimulate) {
      if (cfg.inject.empty() && cfg.bursts.empty()) throw UsageError{"simulate needs --burst or --inject"};
      r["arch"] = cfg.arch;
      r["level"] = cfg.inject.empty() ? cfg.level : "injected";
      r["M"] = cfg.nodes;
      r["N"] = cfg.qubits;
      r["Q"] = cfg.comm;
      r["burst"] = cfg.bursts;
      r["trials"] = cfg.trials;
      r["seed"] = cfg.seed;
      r["inject"] = cfg.inject;
      r["diagnostics"] = cfg.diagnostics;
    } else if (cfg.subcommand == Subcommand::kGenerate) {
      if (cfg.bursts.size() != 1) throw UsageError{"generate takes a single --burst value"};
      r["level"] = cfg.level;
      r["M"] = cfg.nodes;
      r["N"] = cfg.qubits;
      r["burst"] = cfg.bursts.front();
      r["seed"] = cfg.seed;
      r["trial"] = cfg.trial_index;
    } else {
      r["inject"] = cfg.inject;
      r["model"] = cfg.model;
      r["M"] = cfg.nodes;
      r["N"] = cfg.qubits;
      r["Q"] = cfg.comm;
      r["verbose"] = cfg.verbose;
    }
  } else {
    cfg.subcommand = Subcommand::kPlot;
    for (const auto& w : cfg.where) {
      if (w.find('=') == std::string::npos) throw UsageError{"--where expects column=value"};
    }
    r["in"] = cfg.input;
    r["x"] = cfg.x_column;
    r["y"] = cfg.y_columns;
    r["logy"] = cfg.log_y;
    r["group"] = cfg.group_by;
    r["where"] = cfg.where;
    r["title"] = cfg.title;
  }

  ordered_json resolved;
  resolved["subcommand"] = to_string(cfg.subcommand);
  resolved["settings"] = std::move(r);
  cfg.resolved = std::move(resolved);
  return cfg;
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.resolved.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sqgpu::cli
