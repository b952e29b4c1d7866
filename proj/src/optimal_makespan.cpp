// Exhaustive minimum-makespan search used as a verification oracle for the
// greedy scheduler. Deliberately shares no code with simulate(): the step
// feasibility rule is re-implemented here from the model definition.

#include <algorithm>
#include <map>

#include "sqgpu/error.hpp"
#include "sqgpu/sched_sim.hpp"

namespace sqgpu {
namespace {

struct Step {
  std::vector<QubitAddr> qubits;
  std::map<std::int64_t, std::int64_t> node_ops;
  std::int64_t ops = 0;
};

class Search {
 public:
  Search(const std::vector<GateRequest>& reqs, const ResourceModel& model)
      : reqs_(reqs), model_(model) {}

  std::int64_t run(std::int64_t upper_bound) {
    best_ = upper_bound;
    steps_.clear();
    place(0);
    return best_;
  }

 private:
  bool fits(const Step& step, const GateRequest& r) const {
    for (const auto& q : step.qubits) {
      if (q == r.src || q == r.dst) return false;
    }
    switch (model_.kind) {
      case ResourceKind::kDedicated: {
        const auto load = [&](std::int64_t node) {
          auto it = step.node_ops.find(node);
          return it == step.node_ops.end() ? 0 : it->second;
        };
        return load(r.src.node) + 1 <= model_.capacity && load(r.dst.node) + 1 <= model_.capacity;
      }
      case ResourceKind::kShared:
        return step.ops + 1 <= model_.capacity;
      case ResourceKind::kIdeal:
        return true;
    }
    return false;
  }

  static void add(Step& step, const GateRequest& r) {
    step.qubits.push_back(r.src);
    step.qubits.push_back(r.dst);
    ++step.node_ops[r.src.node];
    ++step.node_ops[r.dst.node];
    ++step.ops;
  }

  static void remove(Step& step, const GateRequest& r) {
    step.qubits.resize(step.qubits.size() - 2);
    --step.node_ops[r.src.node];
    --step.node_ops[r.dst.node];
    --step.ops;
  }

  void place(std::size_t i) {
    const auto open = static_cast<std::int64_t>(steps_.size());
    if (open >= best_) return;
    if (i == reqs_.size()) {
      best_ = open;
      return;
    }
    const GateRequest& r = reqs_[i];
    // Steps are unlabeled, so a request may only open the next new step.
    // Index, not reference: the recursion may grow steps_ and reallocate it.
    for (std::size_t k = 0; k < steps_.size(); ++k) {
      if (!fits(steps_[k], r)) continue;
      add(steps_[k], r);
      place(i + 1);
      remove(steps_[k], r);
    }
    if (open + 1 < best_) {
      Step fresh;
      if (!fits(fresh, r)) return;
      add(fresh, r);
      steps_.push_back(std::move(fresh));
      place(i + 1);
      steps_.pop_back();
    }
  }

  const std::vector<GateRequest>& reqs_;
  const ResourceModel& model_;
  std::vector<Step> steps_;
  std::int64_t best_ = 0;
};

}  // namespace

std::int64_t optimal_makespan_bruteforce(const Batch& batch, const ResourceModel& model) {
  if (batch.requests.size() > kOracleMaxRequests) {
    throw Error(ErrorKind::kOracleTooLarge,
                "oracle accepts at most " + std::to_string(kOracleMaxRequests) + " requests");
  }
  validate_batch(batch);
  const auto n = static_cast<std::int64_t>(batch.requests.size());
  if (n == 0) return 0;
  if (model.kind != ResourceKind::kIdeal && model.capacity == 0) {
    throw Error(ErrorKind::kInfeasibleSchedule, "zero capacity");
  }
  // One request per step is always feasible, so n steps bound the search.
  Search search(batch.requests, model);
  return search.run(n + 1);
}

}  // namespace sqgpu
