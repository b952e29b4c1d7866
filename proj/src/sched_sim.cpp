#include "sqgpu/sched_sim.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "sqgpu/error.hpp"

namespace sqgpu {

const char* to_string(ResourceKind kind) noexcept {
  switch (kind) {
    case ResourceKind::kDedicated: return "dedicated";
    case ResourceKind::kShared: return "shared";
    case ResourceKind::kIdeal: return "ideal";
  }
  return "?";
}

ResourceKind parse_resource_kind(const std::string& text) {
  if (text == "dedicated") return ResourceKind::kDedicated;
  if (text == "shared") return ResourceKind::kShared;
  if (text == "ideal") return ResourceKind::kIdeal;
  throw Error(ErrorKind::kInvalidInput, "resource model must be dedicated, shared or ideal");
}

ResourceModel ResourceModel::dedicated(std::int64_t per_node_comm) {
  if (per_node_comm < 0) throw Error(ErrorKind::kInvalidInput, "negative communication qubits");
  return {ResourceKind::kDedicated, per_node_comm};
}

ResourceModel ResourceModel::shared(std::int64_t modules) {
  if (modules < 0) throw Error(ErrorKind::kInvalidInput, "negative module count");
  return {ResourceKind::kShared, modules};
}

ResourceModel ResourceModel::dedicated_from_budget(const SystemShape& shape) {
  shape.validate();
  if (shape.comm_qubit_total % shape.nodes != 0) {
    throw Error(ErrorKind::kInvalidShape, "Q=" + std::to_string(shape.comm_qubit_total) +
                                              " does not split evenly over M=" +
                                              std::to_string(shape.nodes) + " nodes");
  }
  return dedicated(shape.comm_qubit_total / shape.nodes);
}

ResourceModel ResourceModel::shared_from_budget(const SystemShape& shape) {
  shape.validate();
  return shared(shape.comm_qubit_total / 2);
}

ResourceModel ResourceModel::from_budget(ResourceKind kind, const SystemShape& shape) {
  switch (kind) {
    case ResourceKind::kDedicated: return dedicated_from_budget(shape);
    case ResourceKind::kShared: return shared_from_budget(shape);
    case ResourceKind::kIdeal: return ideal();
  }
  return ideal();
}

ScheduleResult simulate(const Batch& batch, const ResourceModel& model) {
  validate_batch(batch);
  const SystemShape& shape = batch.shape;
  const auto& reqs = batch.requests;
  ScheduleResult result;
  if (reqs.empty()) return result;
  if (model.kind != ResourceKind::kIdeal && model.capacity == 0) {
    throw Error(ErrorKind::kInfeasibleSchedule,
                std::string(to_string(model.kind)) + " model has zero capacity");
  }

  std::vector<std::size_t> pending(reqs.size());
  std::iota(pending.begin(), pending.end(), std::size_t{0});
  std::stable_sort(pending.begin(), pending.end(),
                   [&](std::size_t l, std::size_t r) { return reqs[l].seq < reqs[r].seq; });

  const auto qubit_index = [&](const QubitAddr& q) {
    return static_cast<std::size_t>(q.node * shape.qubits_per_node + q.qubit);
  };
  // Last step in which each qubit was busy; avoids clearing per step.
  std::vector<std::int64_t> busy_at(static_cast<std::size_t>(shape.total_qubits()), 0);
  std::vector<std::int64_t> node_load(static_cast<std::size_t>(shape.nodes), 0);

  double capacity_units = 1.0;
  switch (model.kind) {
    case ResourceKind::kDedicated:
      capacity_units = static_cast<double>(model.capacity * shape.nodes);
      break;
    case ResourceKind::kShared:
      capacity_units = static_cast<double>(model.capacity);
      break;
    case ResourceKind::kIdeal:
      capacity_units = static_cast<double>(std::max<std::int64_t>(1, shape.total_qubits() / 2));
      break;
  }

  std::vector<std::size_t> deferred;
  std::int64_t step = 0;
  while (!pending.empty()) {
    ++step;
    std::fill(node_load.begin(), node_load.end(), 0);
    std::int64_t modules_used = 0;
    std::vector<std::int64_t> scheduled;
    deferred.clear();

    for (std::size_t idx : pending) {
      const GateRequest& r = reqs[idx];
      const std::size_t s = qubit_index(r.src);
      const std::size_t d = qubit_index(r.dst);
      bool ok = busy_at[s] != step && busy_at[d] != step;
      if (ok && model.kind == ResourceKind::kDedicated) {
        ok = node_load[static_cast<std::size_t>(r.src.node)] < model.capacity &&
             node_load[static_cast<std::size_t>(r.dst.node)] < model.capacity;
      } else if (ok && model.kind == ResourceKind::kShared) {
        ok = modules_used < model.capacity;
      }
      if (!ok) {
        deferred.push_back(idx);
        continue;
      }
      busy_at[s] = step;
      busy_at[d] = step;
      ++node_load[static_cast<std::size_t>(r.src.node)];
      ++node_load[static_cast<std::size_t>(r.dst.node)];
      ++modules_used;
      scheduled.push_back(r.seq);
    }

    if (scheduled.empty()) {
      throw Error(ErrorKind::kInfeasibleSchedule, "no request could be scheduled");
    }
    const double units = model.kind == ResourceKind::kDedicated
                             ? 2.0 * static_cast<double>(scheduled.size())
                             : static_cast<double>(scheduled.size());
    result.peak_utilization = std::max(result.peak_utilization, units / capacity_units);
    result.steps.push_back(std::move(scheduled));
    pending.swap(deferred);
  }
  result.makespan = step;
  return result;
}

std::int64_t ideal_latency(const Batch& batch) {
  return simulate(batch, ResourceModel::ideal()).makespan;
}

CsrValue csr(double mean_ideal_latency, double mean_realistic_latency) {
  if (mean_ideal_latency < 0.0 || mean_realistic_latency < 0.0) {
    throw Error(ErrorKind::kInvalidInput, "latencies must be non-negative");
  }
  if (mean_realistic_latency == 0.0) {
    if (mean_ideal_latency != 0.0) {
      throw Error(ErrorKind::kInvalidInput, "realistic latency is zero but ideal latency is not");
    }
    return {1.0, 1.0};
  }
  const double ratio = mean_ideal_latency == 0.0 ? std::numeric_limits<double>::infinity()
                                                 : mean_realistic_latency / mean_ideal_latency;
  return {std::min(1.0, mean_ideal_latency / mean_realistic_latency), ratio};
}

std::string schedule_to_json(const ScheduleResult& result, const ResourceModel& model,
                             bool verbose) {
  nlohmann::ordered_json j;
  j["model"] = to_string(model.kind);
  j["capacity"] = model.capacity;
  j["makespan"] = result.makespan;
  j["peak_utilization"] = result.peak_utilization;
  if (verbose) j["steps"] = result.steps;
  return j.dump();
}

}  // namespace sqgpu
