#pragma once

// Bursty remote-gate request batches. A batch is every request raised at a
// single time instant; the scheduler then drains it.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sqgpu/cost_model.hpp"
#include "sqgpu/rng.hpp"

namespace sqgpu {

struct QubitAddr {
  std::int64_t node = 0;
  std::int64_t qubit = 0;

  friend auto operator<=>(const QubitAddr&, const QubitAddr&) = default;
};

struct GateRequest {
  QubitAddr src;
  QubitAddr dst;
  std::int64_t seq = 0;

  friend bool operator==(const GateRequest&, const GateRequest&) = default;
};

struct Batch {
  std::vector<GateRequest> requests;
  SystemShape shape;
};

enum class BurstLevel { kQubit, kNode };

const char* to_string(BurstLevel level) noexcept;
BurstLevel parse_burst_level(const std::string& text);

struct WorkloadSpec {
  BurstLevel level = BurstLevel::kQubit;
  double burst_ratio = 0.0;  // p
  std::uint64_t master_seed = 0;

  void validate() const;
};

/// Every computing qubit independently raises one request with probability p.
Batch gen_qubit_level(const SystemShape& shape, const WorkloadSpec& spec, Xoshiro256StarStar& rng);

/// Every node independently bursts with probability p; a bursting node raises
/// one request from each of its N qubits.
Batch gen_node_level(const SystemShape& shape, const WorkloadSpec& spec, Xoshiro256StarStar& rng);

/// Dispatches on spec.level.
Batch generate_batch(const SystemShape& shape, const WorkloadSpec& spec, Xoshiro256StarStar& rng);

/// Checks address bounds, cross-node endpoints, unique seq and unique sources.
void validate_batch(const Batch& batch);

// JSON lines: {"seq":0,"src":[node,qubit],"dst":[node,qubit]}
void write_batch_jsonl(const Batch& batch, std::ostream& out);
Batch read_batch_jsonl(std::istream& in, const SystemShape& shape);
void save_batch(const Batch& batch, const std::string& path);
Batch load_batch(const std::string& path, const SystemShape& shape);

}  // namespace sqgpu
