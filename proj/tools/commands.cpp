#include "commands.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "sqgpu/chart.hpp"
#include "sqgpu/error.hpp"
#include "sqgpu/experiments.hpp"

namespace sqgpu::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

CostParams load_params(const std::string& path) {
  CostParams params = CostParams::published();
  if (path.empty()) return params;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kConfig, path + ": " + e.what());
  }
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) throw Error(ErrorKind::kConfig, "cost parameter " + key + " must be a number");
    const double v = value.get<double>();
    if (key == "epsilon") {
      params.epsilon = v;
    } else if (key == "a") {
      params.a = v;
    } else if (key == "b") {
      params.b = v;
    } else if (key == "d") {
      params.d = v;
    } else {
      throw Error(ErrorKind::kConfig, "unknown cost parameter '" + key + "'");
    }
  }
  params.validate();
  return params;
}

TableFormat output_format(const RunConfig& cfg) {
  if (!cfg.format.empty()) return parse_table_format(cfg.format);
  return cfg.out.empty() ? TableFormat::kCsv : format_for_path(cfg.out);
}

void emit(const Table& table, const RunConfig& cfg, std::ostream& out) {
  const TableFormat format = output_format(cfg);
  if (cfg.out.empty()) {
    out << render_table(table, format);
  } else {
    write_table(table, format, cfg.out);
  }
}

void stamp(Table& table, const RunConfig& cfg) {
  table.metadata = {{"tool", kToolName}, {"version", kToolVersion}, {"sweep_hash", config_hash(cfg)}};
}

void write_text(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::kIo, "cannot open " + cfg.out + " for writing");
  file << text;
  if (!file) throw Error(ErrorKind::kIo, "failed writing " + cfg.out);
}

std::int64_t single_value(const std::string& flag, const std::string& text) {
  const auto values = parse_int_list(text);
  if (values.size() != 1) throw Error(ErrorKind::kConfig, flag + " takes a single value here");
  return values.front();
}

SystemShape shape_from(const RunConfig& cfg, std::int64_t nodes) {
  const auto n = single_value("--N", cfg.qubits);
  std::int64_t q = 0;
  if (!cfg.comm.empty() && cfg.comm.back() == 'M') {
    q = std::stoll(cfg.comm.substr(0, cfg.comm.size() - 1)) * nodes;
  } else {
    q = std::stoll(cfg.comm);
  }
  return {nodes, n, q};
}


int run_calibrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CalibrationPoint pts[2];
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& text = cfg.points[i];
    const auto colon = text.find(':');
    pts[i] = {std::stoll(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  }
  const Calibration c = calibrate_cost_params(pts[0], pts[1]);
  err << "epsilon=" << format_number(c.epsilon) << " a=" << format_number(c.a) << '\n';
  Table table;
  table.columns = {"epsilon", "a"};
  table.rows.push_back({c.epsilon, c.a});
  stamp(table, cfg);
  emit(table, cfg, out);
  return kExitOk;
}

int run_cost(const RunConfig& cfg, std::ostream& out) {
  CostSweepSpec spec;
  spec.nodes = parse_int_list(cfg.nodes);
  spec.qubits = parse_int_list(cfg.qubits);
  spec.log10 = cfg.contour;
  spec.sqgpu_partial_r = cfg.partial;
  spec.entanglement_even_x = cfg.even;
  spec.entanglement_uneven_r = cfg.uneven;
  spec.params = load_params(cfg.params_file);
  Table table = run_cost_sweep(spec);
  stamp(table, cfg);
  emit(table, cfg, out);
  return kExitOk;
}

int run_qcount(const RunConfig& cfg, std::ostream& out) {
  QcountSweepSpec spec;
  spec.nodes = single_value("--M", cfg.nodes);
  if (cfg.subcase == "E") {
    spec.subcase = Subcase::kEven;
    spec.engaged_nodes = cfg.engaged_nodes;
    spec.values = parse_int_list(cfg.x_range);
  } else {
    spec.subcase = Subcase::kUneven;
    spec.qubits_per_node = single_value("--N", cfg.qubits);
    spec.values = parse_int_list(cfg.r_range);
  }
  Table table = run_qcount_sweep(spec);
  stamp(table, cfg);
  emit(table, cfg, out);
  return kExitOk;
}

int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CsrSweepSpec spec;
  if (cfg.arch == "both") {
    spec.archs = {ResourceKind::kDedicated, ResourceKind::kShared};
  } else {
    spec.archs = {parse_resource_kind(cfg.arch)};
  }
  spec.level = parse_burst_level(cfg.level);
  spec.nodes = parse_int_list(cfg.nodes);
  spec.qubits_per_node = single_value("--N", cfg.qubits);
  if (cfg.comm.back() == 'M') {
    spec.comm_per_node = std::stoll(cfg.comm.substr(0, cfg.comm.size() - 1));
  } else {
    spec.comm_total = std::stoll(cfg.comm);
  }
  spec.burst_ratios = cfg.bursts;
  spec.trials = cfg.trials;
  spec.master_seed = cfg.seed;
  spec.threads = cfg.threads;
  if (!cfg.inject.empty()) {
    if (spec.nodes.size() != 1) throw Error(ErrorKind::kConfig, "--inject needs a single --M");
    spec.injected = load_batch(cfg.inject, shape_from(cfg, spec.nodes.front()));
  }
  const auto points = run_csr_sweep(spec);
  for (const auto& p : points) {
    if (p.ideal_exceeds_constrained != 0) {
      err << "warning: greedy ideal latency exceeded " << to_string(p.arch) << " latency in "
          << p.ideal_exceeds_constrained << " of " << p.trials << " trials at M=" << p.nodes
          << " burst=" << format_number(p.burst_ratio) << '\n';
    }
    if (p.mean_li > p.mean_lr) {
      throw Error(ErrorKind::kInfeasibleSchedule,
                  "mean ideal latency exceeds mean constrained latency at M=" + std::to_string(p.nodes));
    }
  }
  const bool diagnostics = cfg.diagnostics || output_format(cfg) == TableFormat::kJson;
  Table table = csr_table(points, diagnostics);
  stamp(table, cfg);
  table.metadata.emplace_back("seed", std::to_string(cfg.seed));
  table.metadata.emplace_back("empty_trials", "counted_with_zero_latency");
  emit(table, cfg, out);
  return kExitOk;
}

int run_generate(const RunConfig& cfg, std::ostream& out) {
  const SystemShape shape = shape_from(cfg, single_value("--M", cfg.nodes));
  auto rng = derive_trial_rng(cfg.seed, cfg.trial_index);
  const WorkloadSpec spec{parse_burst_level(cfg.level), cfg.bursts.front(), cfg.seed};
  const Batch batch = generate_batch(shape, spec, rng);
  std::ostringstream text;
  write_batch_jsonl(batch, text);
  write_text(text.str(), cfg, out);
  return kExitOk;
}

int run_schedule(const RunConfig& cfg, std::ostream& out) {
  const SystemShape shape = shape_from(cfg, single_value("--M", cfg.nodes));
  const Batch batch = load_batch(cfg.inject, shape);
  const ResourceModel model = ResourceModel::from_budget(parse_resource_kind(cfg.model), shape);
  const ScheduleResult result = simulate(batch, model);
  write_text(schedule_to_json(result, model, cfg.verbose) + "\n", cfg, out);
  return kExitOk;
}

int run_plot(const RunConfig& cfg) {
  const Table table = read_table(cfg.input);
  ChartSpec spec;
  spec.x_column = cfg.x_column;
  spec.y_columns = cfg.y_columns;
  spec.log_y = cfg.log_y;
  spec.group_by = cfg.group_by;
  spec.title = cfg.title;
  for (const auto& w : cfg.where) {
    const auto eq = w.find('=');
    spec.where.emplace_back(w.substr(0, eq), w.substr(eq + 1));
  }
  render_chart(table, spec, cfg.out);
  return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  err << "config " << config.resolved.dump() << '\n';
  switch (config.subcommand) {
    case Subcommand::kCalibrate: return run_calibrate(config, out, err);
    case Subcommand::kCost: return run_cost(config, out);
    case Subcommand::kQcount: return run_qcount(config, out);
    case Subcommand::kSimulate: return run_simulate(config, out, err);
    case Subcommand::kGenerate: return run_generate(config, out);
    case Subcommand::kSchedule: return run_schedule(config, out);
    case Subcommand::kPlot: return run_plot(config);
  }
  return kExitUsage;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_config(args);
    return run(config, out, err);
  } catch (const UsageError& e) {
    (e.exit_code == 0 ? out : err) << e.message;
    if (!e.message.empty() && e.message.back() != '\n') (e.exit_code == 0 ? out : err) << '\n';
    return e.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::kConfig ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace sqgpu::cli
