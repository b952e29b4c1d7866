#include "sqgpu/workload.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "json.hpp"

#include "sqgpu/error.hpp"

namespace sqgpu {
namespace {

using ordered_json = nlohmann::ordered_json;

void require_multi_node(const SystemShape& shape) {
  shape.validate();
  if (shape.nodes < 2) {
    throw Error(ErrorKind::kInvalidShape, "remote gates need at least two nodes");
  }
}

// Uniform over the (M-1)*N qubits outside `src_node`, numbered node-major with
// the source node skipped.
QubitAddr draw_remote_target(const SystemShape& shape, std::int64_t src_node,
                             Xoshiro256StarStar& rng) {
  const auto n = static_cast<std::uint64_t>(shape.qubits_per_node);
  const auto remote = static_cast<std::uint64_t>(shape.nodes - 1) * n;
  const std::uint64_t pick = rng.uniform_below(remote);
  auto node = static_cast<std::int64_t>(pick / n);
  if (node >= src_node) ++node;
  return {node, static_cast<std::int64_t>(pick % n)};
}

QubitAddr parse_addr(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw Error(ErrorKind::kInvalidInput, "qubit address must be [node, qubit]");
  }
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

}  // namespace

const char* to_string(BurstLevel level) noexcept {
  return level == BurstLevel::kQubit ? "qubit" : "node";
}

BurstLevel parse_burst_level(const std::string& text) {
  if (text == "qubit") return BurstLevel::kQubit;
  if (text == "node") return BurstLevel::kNode;
  throw Error(ErrorKind::kInvalidInput, "burst level must be qubit or node, got '" + text + "'");
}

void WorkloadSpec::validate() const {
  if (!(burst_ratio >= 0.0 && burst_ratio <= 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "burst ratio must lie in [0, 1]");
  }
}

Batch gen_qubit_level(const SystemShape& shape, const WorkloadSpec& spec, Xoshiro256StarStar& rng) {
  require_multi_node(shape);
  spec.validate();
  Batch batch{{}, shape};
  std::int64_t seq = 0;
  for (std::int64_t node = 0; node < shape.nodes; ++node) {
    for (std::int64_t qubit = 0; qubit < shape.qubits_per_node; ++qubit) {
      if (!rng.bernoulli(spec.burst_ratio)) continue;
      batch.requests.push_back({{node, qubit}, draw_remote_target(shape, node, rng), seq++});
    }
  }
  return batch;
}

Batch gen_node_level(const SystemShape& shape, const WorkloadSpec& spec, Xoshiro256StarStar& rng) {
  require_multi_node(shape);
  spec.validate();
  Batch batch{{}, shape};
  std::int64_t seq = 0;
  for (std::int64_t node = 0; node < shape.nodes; ++node) {
    if (!rng.bernoulli(spec.burst_ratio)) continue;
    for (std::int64_t qubit = 0; qubit < shape.qubits_per_node; ++qubit) {
      batch.requests.push_back({{node, qubit}, draw_remote_target(shape, node, rng), seq++});
    }
  }
  return batch;
}

Batch generate_batch(const SystemShape& shape, const WorkloadSpec& spec, Xoshiro256StarStar& rng) {
  return spec.level == BurstLevel::kQubit ? gen_qubit_level(shape, spec, rng)
                                          : gen_node_level(shape, spec, rng);
}

void validate_batch(const Batch& batch) {
  const SystemShape& shape = batch.shape;
  shape.validate();
  const auto in_bounds = [&](const QubitAddr& q) {
    return q.node >= 0 && q.node < shape.nodes && q.qubit >= 0 && q.qubit < shape.qubits_per_node;
  };
  std::set<std::int64_t> seqs;
  std::set<QubitAddr> sources;
  for (const auto& r : batch.requests) {
    if (!in_bounds(r.src) || !in_bounds(r.dst)) {
      throw Error(ErrorKind::kInvalidInput, "request " + std::to_string(r.seq) + " is out of bounds");
    }
    if (r.src.node == r.dst.node) {
      throw Error(ErrorKind::kInvalidInput, "request " + std::to_string(r.seq) + " is not remote");
    }
    if (!seqs.insert(r.seq).second) {
      throw Error(ErrorKind::kInvalidInput, "duplicate seq " + std::to_string(r.seq));
    }
    if (!sources.insert(r.src).second) {
      throw Error(ErrorKind::kInvalidInput,
                  "qubit is the source of more than one request (seq " + std::to_string(r.seq) + ")");
    }
  }
}

void write_batch_jsonl(const Batch& batch, std::ostream& out) {
  for (const auto& r : batch.requests) {
    ordered_json line;
    line["seq"] = r.seq;
    line["src"] = {r.src.node, r.src.qubit};
    line["dst"] = {r.dst.node, r.dst.qubit};
    out << line.dump() << '\n';
  }
}

Batch read_batch_jsonl(std::istream& in, const SystemShape& shape) {
  Batch batch{{}, shape};
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::kInvalidInput,
                  "batch line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("seq") || !j.contains("src") || !j.contains("dst") ||
        !j["seq"].is_number_integer()) {
      throw Error(ErrorKind::kInvalidInput,
                  "batch line " + std::to_string(line_no) + " needs integer seq, src and dst");
    }
    batch.requests.push_back({parse_addr(j["src"]), parse_addr(j["dst"]), j["seq"].get<std::int64_t>()});
  }
  validate_batch(batch);
  return batch;
}

void save_batch(const Batch& batch, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  write_batch_jsonl(batch, out);
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path);
}

Batch load_batch(const std::string& path, const SystemShape& shape) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  return read_batch_jsonl(in, shape);
}

}  // namespace sqgpu
