#pragma once

// Discrete-time scheduling of a request batch. Every remote gate takes one
// step; resources are released at the end of the step they were used in.
//
//   dedicated  each node owns `capacity` communication qubits, and a gate
//              consumes one at both endpoint nodes
//   shared     a pool of `capacity` two-qubit gate modules, one per gate
//   ideal      no communication-qubit limit, only qubit exclusivity

#include <cstdint>
#include <string>
#include <vector>

#include "sqgpu/workload.hpp"

namespace sqgpu {

enum class ResourceKind { kDedicated, kShared, kIdeal };

const char* to_string(ResourceKind kind) noexcept;
ResourceKind parse_resource_kind(const std::string& text);

struct ResourceModel {
  ResourceKind kind = ResourceKind::kIdeal;
  std::int64_t capacity = 0;  // per-node comm qubits (dedicated) or modules (shared)

  static ResourceModel dedicated(std::int64_t per_node_comm);
  static ResourceModel shared(std::int64_t modules);
  static ResourceModel ideal() noexcept { return {}; }

  /// Q/M per node; rejects a Q that does not divide evenly across nodes.
  static ResourceModel dedicated_from_budget(const SystemShape& shape);
  /// floor(Q/2) modules, two communication qubits each.
  static ResourceModel shared_from_budget(const SystemShape& shape);
  static ResourceModel from_budget(ResourceKind kind, const SystemShape& shape);
};

struct ScheduleResult {
  std::int64_t makespan = 0;
  std::vector<std::vector<std::int64_t>> steps;  // seq numbers per step
  double peak_utilization = 0.0;

  friend bool operator==(const ScheduleResult&, const ScheduleResult&) = default;
};

/// Greedy FIFO: each step scans pending requests in seq order and takes every
/// one whose endpoint qubits are idle and whose resources are still free.
/// Throws kInfeasibleSchedule when a non-empty batch can never progress.
ScheduleResult simulate(const Batch& batch, const ResourceModel& model);

/// Greedy makespan without communication-qubit limits.
std::int64_t ideal_latency(const Batch& batch);

inline constexpr std::size_t kOracleMaxRequests = 10;

/// Exact minimum makespan by branch and bound over step assignments. Only for
/// batches of at most kOracleMaxRequests requests.
std::int64_t optimal_makespan_bruteforce(const Batch& batch, const ResourceModel& model);

struct CsrValue {
  double csr = 1.0;            // min(1, L_i / L_r), higher is better
  double latency_ratio = 1.0;  // L_r / L_i
};

CsrValue csr(double mean_ideal_latency, double mean_realistic_latency);

/// {"model":..,"capacity":..,"makespan":..,"peak_utilization":..[,"steps":[[seq..]..]]}
std::string schedule_to_json(const ScheduleResult& result, const ResourceModel& model, bool verbose);

}  // namespace sqgpu
