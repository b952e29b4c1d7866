#include "sqgpu/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "sqgpu/error.hpp"

namespace sqgpu {
namespace {

std::int64_t parse_int(const std::string& text) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorKind::kConfig, "not an integer: '" + text + "'");
  }
  return v;
}

struct TrialOutcome {
  std::int64_t ideal = 0;
  std::vector<std::int64_t> constrained;  // one per arch
};

}  // namespace

IntRange IntRange::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() > 3) throw Error(ErrorKind::kConfig, "range must be first[:last[:step]]");
  IntRange r;
  r.first = parse_int(parts[0]);
  r.last = parts.size() > 1 ? parse_int(parts[1]) : r.first;
  r.step = parts.size() > 2 ? parse_int(parts[2]) : 1;
  if (r.step < 1 || r.last < r.first) {
    throw Error(ErrorKind::kConfig, "range '" + text + "' is empty or has a non-positive step");
  }
  return r;
}

std::vector<std::int64_t> IntRange::values() const {
  std::vector<std::int64_t> out;
  for (std::int64_t v = first; v <= last; v += step) out.push_back(v);
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto part = IntRange::parse(text.substr(start, comma - start)).values();
    out.insert(out.end(), part.begin(), part.end());
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

StatSummary aggregate_stats(const std::vector<double>& samples) {
  if (samples.empty()) throw Error(ErrorKind::kInvalidInput, "no samples to aggregate");
  const auto n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / n;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double stderr_mean = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
  return {mean, stderr_mean, static_cast<std::int64_t>(samples.size())};
}

// ---------------------------------------------------------------------------

void CostSweepSpec::validate() const {
  if (nodes.empty() || qubits.empty()) throw Error(ErrorKind::kConfig, "cost grid is empty");
  if (entanglement_even_x && entanglement_uneven_r) {
    throw Error(ErrorKind::kConfig, "--even and --uneven are mutually exclusive");
  }
  if (log10 && (sqgpu_partial_r || entanglement_even_x || entanglement_uneven_r)) {
    throw Error(ErrorKind::kConfig, "log10 contour output supports full pairing only");
  }
  params.validate();
}

Table run_cost_sweep(const CostSweepSpec& spec) {
  spec.validate();
  Table table;
  table.columns = {"M", "N", "cost_sqgpu", "cost_entanglement", "cost_monolithic"};
  for (std::int64_t m : spec.nodes) {
    for (std::int64_t n : spec.qubits) {
      const SystemShape shape{m, n, 0};
      double cs = 0.0;
      double ce = 0.0;
      double c0 = 0.0;
      if (spec.log10) {
        cs = lg_cost_sqgpu(shape, spec.params);
        ce = lg_cost_entanglement(shape, spec.params);
        c0 = lg_cost_monolithic(shape, spec.params);
      } else {
        cs = spec.sqgpu_partial_r ? cost_sqgpu_partial(shape, *spec.sqgpu_partial_r, spec.params)
                                  : cost_sqgpu(shape, spec.params);
        if (spec.entanglement_even_x) {
          ce = cost_entanglement_partial_even(shape, *spec.entanglement_even_x, spec.params);
        } else if (spec.entanglement_uneven_r) {
          ce = cost_entanglement_partial_uneven(shape, *spec.entanglement_uneven_r, spec.params);
        } else {
          ce = cost_entanglement(shape, spec.params);
        }
        c0 = cost_monolithic(shape, spec.params);
      }
      table.rows.push_back({m, n, cs, ce, c0});
    }
  }
  return table;
}

// ---------------------------------------------------------------------------

void QcountSweepSpec::validate() const {
  if (values.empty()) throw Error(ErrorKind::kConfig, "qcount range is empty");
  if (nodes < 1) throw Error(ErrorKind::kConfig, "qcount needs M >= 1");
  if (subcase == Subcase::kEven && (engaged_nodes < 1 || engaged_nodes > nodes)) {
    throw Error(ErrorKind::kConfig, "subcase E needs 1 <= y <= M");
  }
  if (subcase == Subcase::kUneven && qubits_per_node < 1) {
    throw Error(ErrorKind::kConfig, "subcase U needs N >= 1");
  }
}

Table run_qcount_sweep(const QcountSweepSpec& spec) {
  spec.validate();
  Table table;
  table.columns = {"param", "Q_E", "Q_S"};
  for (std::int64_t v : spec.values) {
    CommBudget budget;
    if (spec.subcase == Subcase::kEven) {
      if ((v * spec.engaged_nodes) % 2 != 0) continue;
      budget = comm_budget_even(spec.nodes, v, spec.engaged_nodes);
    } else {
      budget = comm_budget_uneven(spec.nodes, spec.qubits_per_node, v);
    }
    table.rows.push_back({v, budget.q_entanglement, budget.q_sqgpu});
  }
  return table;
}

// ---------------------------------------------------------------------------

std::int64_t CsrSweepSpec::comm_qubits_for(std::int64_t m) const {
  return comm_total ? *comm_total : comm_per_node * m;
}

void CsrSweepSpec::validate() const {
  if (archs.empty()) throw Error(ErrorKind::kConfig, "no architecture selected");
  for (auto a : archs) {
    if (a == ResourceKind::kIdeal) throw Error(ErrorKind::kConfig, "ideal is the reference, not an arch");
  }
  if (nodes.empty()) throw Error(ErrorKind::kConfig, "M grid is empty");
  if (trials < 1) throw Error(ErrorKind::kConfig, "trials must be >= 1");
  if (qubits_per_node < 1) throw Error(ErrorKind::kConfig, "N must be >= 1");
  if (comm_per_node < 0 || (comm_total && *comm_total < 0)) {
    throw Error(ErrorKind::kConfig, "Q must be non-negative");
  }
  for (auto m : nodes) {
    if (m < 2) throw Error(ErrorKind::kConfig, "simulation needs M >= 2");
  }
  if (injected) {
    if (nodes.size() != 1) throw Error(ErrorKind::kConfig, "an injected batch needs a single M");
    if (injected->shape.nodes != nodes.front() || injected->shape.qubits_per_node != qubits_per_node) {
      throw Error(ErrorKind::kConfig, "injected batch shape does not match M and N");
    }
  } else {
    if (burst_ratios.empty()) throw Error(ErrorKind::kConfig, "burst ratio list is empty");
    for (double p : burst_ratios) {
      if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::kConfig, "burst ratio must lie in [0, 1]");
    }
  }
}

std::vector<CsrPoint> run_csr_sweep(const CsrSweepSpec& spec) {
  spec.validate();

  struct GridPoint {
    SystemShape shape;
    double burst;
    std::vector<ResourceModel> models;
  };
  std::vector<GridPoint> grid;
  const std::vector<double> bursts =
      spec.injected ? std::vector<double>{std::nan("")} : spec.burst_ratios;
  for (std::int64_t m : spec.nodes) {
    for (double p : bursts) {
      GridPoint gp{{m, spec.qubits_per_node, spec.comm_qubits_for(m)}, p, {}};
      for (auto arch : spec.archs) gp.models.push_back(ResourceModel::from_budget(arch, gp.shape));
      grid.push_back(std::move(gp));
    }
  }

  const auto trials = static_cast<std::size_t>(spec.trials);
  std::vector<TrialOutcome> outcomes(grid.size() * trials);

  const auto run_task = [&](std::size_t task) {
    const std::size_t k = task / trials;
    const GridPoint& gp = grid[k];
    Batch batch;
    if (spec.injected) {
      batch = *spec.injected;
    } else {
      auto rng = derive_trial_rng(spec.master_seed, static_cast<std::uint64_t>(task));
      batch = generate_batch(gp.shape, {spec.level, gp.burst, spec.master_seed}, rng);
    }
    TrialOutcome& out = outcomes[task];
    out.ideal = ideal_latency(batch);
    for (const auto& model : gp.models) out.constrained.push_back(simulate(batch, model).makespan);
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(outcomes.size())));
  if (workers == 1) {
    for (std::size_t t = 0; t < outcomes.size(); ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < outcomes.size(); t = next++) {
          try {
            run_task(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = outcomes.size();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<CsrPoint> points;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const GridPoint& gp = grid[k];
    for (std::size_t a = 0; a < spec.archs.size(); ++a) {
      std::vector<double> lr;
      std::vector<double> li;
      std::vector<double> trial_csr;
      CsrPoint pt;
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialOutcome& o = outcomes[k * trials + t];
        const auto constrained = o.constrained[a];
        lr.push_back(static_cast<double>(constrained));
        li.push_back(static_cast<double>(o.ideal));
        trial_csr.push_back(csr(static_cast<double>(o.ideal), static_cast<double>(constrained)).csr);
        if (constrained == 0) ++pt.empty_trials;
        if (o.ideal > constrained) ++pt.ideal_exceeds_constrained;
      }
      const StatSummary slr = aggregate_stats(lr);
      const StatSummary sli = aggregate_stats(li);
      const CsrValue value = csr(sli.mean, slr.mean);

      // Delta method for the ratio of means L_i / L_r.
      double stderr_csr = 0.0;
      if (trials > 1 && slr.mean > 0.0) {
        const double ratio = sli.mean / slr.mean;
        double var_li = 0.0;
        double var_lr = 0.0;
        double cov = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
          const double dx = li[t] - sli.mean;
          const double dy = lr[t] - slr.mean;
          var_li += dx * dx;
          var_lr += dy * dy;
          cov += dx * dy;
        }
        const double denom = static_cast<double>(trials - 1);
        var_li /= denom;
        var_lr /= denom;
        cov /= denom;
        const double v = (var_li - 2.0 * ratio * cov + ratio * ratio * var_lr) /
                         (slr.mean * slr.mean * static_cast<double>(trials));
        stderr_csr = std::sqrt(std::max(0.0, v));
      }

      pt.arch = spec.archs[a];
      pt.level = spec.injected ? "injected" : to_string(spec.level);
      pt.nodes = gp.shape.nodes;
      pt.qubits_per_node = gp.shape.qubits_per_node;
      pt.comm_qubits = gp.shape.comm_qubit_total;
      pt.burst_ratio = gp.burst;
      pt.trials = spec.trials;
      pt.mean_lr = slr.mean;
      pt.mean_li = sli.mean;
      pt.csr = value.csr;
      pt.latency_ratio = value.latency_ratio;
      pt.stderr_csr = stderr_csr;
      pt.seed = spec.master_seed;
      pt.mean_trial_csr = aggregate_stats(trial_csr).mean;
      pt.stderr_lr = slr.stderr_mean;
      points.push_back(std::move(pt));
    }
  }
  return points;
}

Table csr_table(const std::vector<CsrPoint>& points, bool with_diagnostics) {
  Table table;
  table.columns = {"arch",    "level",   "M",   "N",             "Q",          "burst_ratio", "trials",
                   "mean_Lr", "mean_Li", "csr", "latency_ratio", "stderr_csr", "seed"};
  if (with_diagnostics) {
    table.columns.insert(table.columns.end(),
                         {"mean_trial_csr", "stderr_Lr", "empty_trials", "ideal_exceeds_constrained"});
  }
  for (const auto& p : points) {
    std::vector<Cell> row{std::string(to_string(p.arch)),
                          p.level,
                          p.nodes,
                          p.qubits_per_node,
                          p.comm_qubits,
                          p.burst_ratio,
                          p.trials,
                          p.mean_lr,
                          p.mean_li,
                          p.csr,
                          p.latency_ratio,
                          p.stderr_csr,
                          // Seeds are u64; the table stores them as text to avoid sign issues.
                          std::to_string(p.seed)};
    if (with_diagnostics) {
      row.insert(row.end(), {p.mean_trial_csr, p.stderr_lr, p.empty_trials, p.ideal_exceeds_constrained});
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("SQGPU_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace sqgpu
