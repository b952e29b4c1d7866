#pragma once

// Sweep runners behind the cost curves, communication-qubit budget curves and
// Monte-Carlo satisfaction-ratio surfaces. Every runner returns a Table in
// the canonical column order used by the CSV/JSON writers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqgpu/cost_model.hpp"
#include "sqgpu/sched_sim.hpp"
#include "sqgpu/table.hpp"
#include "sqgpu/workload.hpp"

namespace sqgpu {

/// Inclusive integer range "first:last[:step]" or a single value.
struct IntRange {
  std::int64_t first = 0;
  std::int64_t last = 0;
  std::int64_t step = 1;

  static IntRange parse(const std::string& text);
  std::vector<std::int64_t> values() const;
};

/// Comma-separated list of IntRange items, e.g. "8,16" or "2:10:2,50".
std::vector<std::int64_t> parse_int_list(const std::string& text);

struct StatSummary {
  double mean = 0.0;
  double stderr_mean = 0.0;  // s / sqrt(n), 0 for n == 1
  std::int64_t count = 0;
};

/// Throws kInvalidInput on an empty sample.
StatSummary aggregate_stats(const std::vector<double>& samples);

// ---------------------------------------------------------------------------
// Cost curves

struct CostSweepSpec {
  std::vector<std::int64_t> nodes;   // M
  std::vector<std::int64_t> qubits;  // N
  bool log10 = false;                // contour mode: lg of every cost
  // Partial pairing; at most one entanglement variant at a time.
  std::optional<std::int64_t> sqgpu_partial_r;
  std::optional<std::int64_t> entanglement_even_x;
  std::optional<std::int64_t> entanglement_uneven_r;
  CostParams params = CostParams::published();

  void validate() const;
};

/// Columns: M,N,cost_sqgpu,cost_entanglement,cost_monolithic
Table run_cost_sweep(const CostSweepSpec& spec);

// ---------------------------------------------------------------------------
// Communication-qubit budgets

enum class Subcase { kEven, kUneven };

struct QcountSweepSpec {
  Subcase subcase = Subcase::kEven;
  std::int64_t nodes = 0;            // M
  std::int64_t engaged_nodes = 0;    // y, subcase E
  std::int64_t qubits_per_node = 0;  // N, subcase U
  std::vector<std::int64_t> values;  // x (E) or R (U)

  void validate() const;
};

/// Columns: param,Q_E,Q_S. Subcase E skips x with x*y odd.
Table run_qcount_sweep(const QcountSweepSpec& spec);

// ---------------------------------------------------------------------------
// Satisfaction-ratio Monte Carlo

struct CsrPoint {
  ResourceKind arch = ResourceKind::kDedicated;
  std::string level;  // "qubit", "node" or "injected"
  std::int64_t nodes = 0;
  std::int64_t qubits_per_node = 0;
  std::int64_t comm_qubits = 0;
  double burst_ratio = 0.0;
  std::int64_t trials = 0;
  double mean_lr = 0.0;
  double mean_li = 0.0;
  double csr = 1.0;
  double latency_ratio = 1.0;
  double stderr_csr = 0.0;
  std::uint64_t seed = 0;
  // Diagnostics, JSON only.
  double mean_trial_csr = 1.0;
  double stderr_lr = 0.0;
  std::int64_t empty_trials = 0;
  std::int64_t ideal_exceeds_constrained = 0;  // must stay 0
};

struct CsrSweepSpec {
  std::vector<ResourceKind> archs{ResourceKind::kDedicated, ResourceKind::kShared};
  BurstLevel level = BurstLevel::kQubit;
  std::vector<std::int64_t> nodes;
  std::int64_t qubits_per_node = 50;
  std::int64_t comm_per_node = 10;           // Q = comm_per_node * M ...
  std::optional<std::int64_t> comm_total;    // ... unless an absolute Q is given
  std::vector<double> burst_ratios;
  std::int64_t trials = 500;
  std::uint64_t master_seed = 42;
  std::optional<Batch> injected;  // replay this batch every trial instead of sampling
  unsigned threads = 1;

  std::int64_t comm_qubits_for(std::int64_t m) const;
  void validate() const;
};

/// Grid order: M ascending as listed, then burst ratio as listed, then arch.
/// Trial t of grid point k uses derive_trial_rng(seed, k * trials + t); both
/// architectures replay the same batches.
std::vector<CsrPoint> run_csr_sweep(const CsrSweepSpec& spec);

/// Columns: arch,level,M,N,Q,burst_ratio,trials,mean_Lr,mean_Li,csr,
/// latency_ratio,stderr_csr,seed
Table csr_table(const std::vector<CsrPoint>& points, bool with_diagnostics = false);

/// Thread count from SQGPU_THREADS, else hardware concurrency, at least 1.
unsigned default_thread_count();

}  // namespace sqgpu
