#include "sqgpu/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sqgpu/error.hpp"

namespace sqgpu {
namespace {

constexpr double kMinGrowth = 1.0 + 1e-9;
constexpr double kMaxGrowth = 1000.0;
constexpr int kBisectionIterations = 200;

// log(e^x - 1) for x > 0 without overflow.
double log_expm1(double x) {
  if (x > 30.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

// epsilon * (a^n - 1)
double node_price(double epsilon, double a, std::int64_t n) {
  return epsilon * (std::pow(a, static_cast<double>(n)) - 1.0);
}

double log_node_price(double epsilon, double a, std::int64_t n) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  return std::log(epsilon) + log_expm1(static_cast<double>(n) * std::log(a));
}

double log_sum_exp(std::initializer_list<double> terms) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double t : terms) peak = std::max(peak, t);
  if (std::isinf(peak)) return peak;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

double log_or_neg_inf(double v) {
  return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
}

// Shared by the full-pairing and partial-pairing S-QGPU formulas so that the
// R = MN/2 reduction evaluates the identical expression.
struct SqgpuTerms {
  std::int64_t nodes;
  std::int64_t node_qubits;
  std::int64_t modules;
  std::int64_t channels;
  std::int64_t switch_paths;
};

SqgpuTerms sqgpu_terms(const SystemShape& s, std::int64_t simultaneous) {
  const std::int64_t mn = s.total_qubits();
  return {s.nodes, s.qubits_per_node, simultaneous, mn, mn * (2 * simultaneous)};
}

double evaluate(const SqgpuTerms& t, const CostParams& p) {
  return static_cast<double>(t.nodes) * node_price(p.epsilon, p.a, t.node_qubits) +
         static_cast<double>(t.modules) * node_price(p.epsilon, p.a, 2) +
         p.b * static_cast<double>(t.channels) + p.d * static_cast<double>(t.switch_paths);
}

double evaluate_log(const SqgpuTerms& t, const CostParams& p) {
  return log_sum_exp({
      std::log(static_cast<double>(t.nodes)) + log_node_price(p.epsilon, p.a, t.node_qubits),
      std::log(static_cast<double>(t.modules)) + log_node_price(p.epsilon, p.a, 2),
      log_or_neg_inf(p.b * static_cast<double>(t.channels)),
      log_or_neg_inf(p.d * static_cast<double>(t.switch_paths)),
  });
}

// Each node carries N computing qubits plus `comm_per_node` communication
// qubits; the switch has MN * (M * comm_per_node) paths.
struct EntanglementTerms {
  std::int64_t nodes;
  std::int64_t node_qubits;
  std::int64_t channels;
  std::int64_t switch_paths;
};

EntanglementTerms entanglement_terms(const SystemShape& s, std::int64_t comm_per_node) {
  const std::int64_t mn = s.total_qubits();
  return {s.nodes, s.qubits_per_node + comm_per_node, mn, mn * (s.nodes * comm_per_node)};
}

double evaluate(const EntanglementTerms& t, const CostParams& p) {
  return static_cast<double>(t.nodes) * node_price(p.epsilon, p.a, t.node_qubits) +
         p.b * static_cast<double>(t.channels) + p.d * static_cast<double>(t.switch_paths);
}

double evaluate_log(const EntanglementTerms& t, const CostParams& p) {
  return log_sum_exp({
      std::log(static_cast<double>(t.nodes)) + log_node_price(p.epsilon, p.a, t.node_qubits),
      log_or_neg_inf(p.b * static_cast<double>(t.channels)),
      log_or_neg_inf(p.d * static_cast<double>(t.switch_paths)),
  });
}

void require_even_pairing(const SystemShape& shape) {
  if (shape.total_qubits() % 2 != 0) {
    throw Error(ErrorKind::kInvalidShape,
                "full pairing needs an even M*N, got " + std::to_string(shape.total_qubits()));
  }
}

void check(const SystemShape& shape, const CostParams& params) {
  shape.validate();
  params.validate();
}

}  // namespace

void CostParams::validate() const {
  if (!(epsilon > 0.0) || !(a > 1.0) || !(b >= 0.0) || !(d >= 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "cost parameters need epsilon > 0, a > 1, b >= 0, d >= 0");
  }
}

void SystemShape::validate() const {
  if (nodes < 1 || qubits_per_node < 1 || comm_qubit_total < 0) {
    throw Error(ErrorKind::kInvalidShape, "shape needs M >= 1, N >= 1, Q >= 0");
  }
}

PairingSpec PairingSpec::from_xy(std::int64_t x, std::int64_t y, const SystemShape& shape) {
  shape.validate();
  if (x < 1 || x > shape.qubits_per_node || y < 1 || y > shape.nodes) {
    throw Error(ErrorKind::kInvalidPairing, "pairing needs 1 <= x <= N and 1 <= y <= M");
  }
  if ((x * y) % 2 != 0) {
    throw Error(ErrorKind::kInvalidPairing, "x*y must be even");
  }
  return {x, y, x * y / 2};
}

Calibration calibrate_cost_params(CalibrationPoint first, CalibrationPoint second) {
  if (first.qubits < 2 || second.qubits < 2) {
    throw Error(ErrorKind::kInvalidInput, "calibration points need at least 2 qubits");
  }
  if (!(first.price > 0.0) || !(second.price > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "calibration prices must be positive");
  }
  if (first.qubits == second.qubits) {
    throw Error(ErrorKind::kDegenerateInput, "calibration points share a qubit count");
  }
  if (first.qubits > second.qubits) std::swap(first, second);

  const auto n_lo = static_cast<double>(first.qubits);
  const auto n_hi = static_cast<double>(second.qubits);
  // (a^n_hi - 1) / (a^n_lo - 1) is strictly increasing in a > 1.
  const auto log_ratio = [&](double a) {
    const double la = std::log(a);
    return log_expm1(n_hi * la) - log_expm1(n_lo * la);
  };
  const double target = std::log(second.price / first.price);

  double lo = kMinGrowth;
  double hi = kMaxGrowth;
  if (!(log_ratio(lo) < target && target <= log_ratio(hi))) {
    throw Error(ErrorKind::kInfeasibleCalibration, "no growth base in (1, 1000] fits both points");
  }
  for (int i = 0; i < kBisectionIterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (log_ratio(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double a = 0.5 * (lo + hi);
  return {first.price / std::expm1(n_lo * std::log(a)), a};
}

double cost_sqgpu(const SystemShape& shape, const CostParams& params) {
  check(shape, params);
  require_even_pairing(shape);
  return evaluate(sqgpu_terms(shape, shape.total_qubits() / 2), params);
}

double cost_entanglement(const SystemShape& shape, const CostParams& params) {
  check(shape, params);
  return evaluate(entanglement_terms(shape, shape.qubits_per_node), params);
}

double cost_monolithic(const SystemShape& shape, const CostParams& params) {
  check(shape, params);
  return node_price(params.epsilon, params.a, shape.total_qubits());
}

double cost_sqgpu_partial(const SystemShape& shape, std::int64_t simultaneous,
                          const CostParams& params) {
  check(shape, params);
  if (simultaneous < 1 || 2 * simultaneous > shape.total_qubits()) {
    throw Error(ErrorKind::kInvalidPairing, "R must lie in [1, MN/2]");
  }
  return evaluate(sqgpu_terms(shape, simultaneous), params);
}

double cost_entanglement_partial_even(const SystemShape& shape, std::int64_t x,
                                      const CostParams& params) {
  check(shape, params);
  if (x < 1 || x > shape.qubits_per_node) {
    throw Error(ErrorKind::kInvalidPairing, "x must lie in [1, N]");
  }
  return evaluate(entanglement_terms(shape, x), params);
}

double cost_entanglement_partial_uneven(const SystemShape& shape, std::int64_t simultaneous,
                                        const CostParams& params) {
  check(shape, params);
  if (simultaneous < 1) throw Error(ErrorKind::kInvalidPairing, "R must be >= 1");
  // Past R = N every node already holds N communication qubits.
  const std::int64_t per_node = std::min(simultaneous, shape.qubits_per_node);
  return evaluate(entanglement_terms(shape, per_node), params);
}

double lg_cost_sqgpu(const SystemShape& shape, const CostParams& params) {
  check(shape, params);
  require_even_pairing(shape);
  return evaluate_log(sqgpu_terms(shape, shape.total_qubits() / 2), params) / std::log(10.0);
}

double lg_cost_entanglement(const SystemShape& shape, const CostParams& params) {
  check(shape, params);
  return evaluate_log(entanglement_terms(shape, shape.qubits_per_node), params) / std::log(10.0);
}

double lg_cost_monolithic(const SystemShape& shape, const CostParams& params) {
  check(shape, params);
  return log_node_price(params.epsilon, params.a, shape.total_qubits()) / std::log(10.0);
}

double asymptotic_ratio(std::int64_t nodes, std::int64_t qubits_per_node, const CostParams& params,
                        RatioKind which) {
  params.validate();
  if (nodes < 1 || qubits_per_node < 0) {
    throw Error(ErrorKind::kInvalidShape, "ratio needs M >= 1 and N >= 0");
  }
  const double la = std::log(params.a);
  const auto n = static_cast<double>(qubits_per_node);
  switch (which) {
    case RatioKind::kSqgpuOverMonolithic:
      return static_cast<double>(nodes) * std::exp((n - static_cast<double>(nodes) * n) * la);
    case RatioKind::kSqgpuOverEntanglement:
      return std::exp(-n * la);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

CommBudget comm_budget_even(std::int64_t nodes, std::int64_t x, std::int64_t y) {
  if (nodes < 1 || x < 1 || y < 1 || y > nodes) {
    throw Error(ErrorKind::kInvalidPairing, "subcase E needs x >= 1 and 1 <= y <= M");
  }
  if ((x * y) % 2 != 0) throw Error(ErrorKind::kInvalidPairing, "x*y must be even");
  return {nodes * x, x * y};
}

CommBudget comm_budget_uneven(std::int64_t nodes, std::int64_t qubits_per_node,
                              std::int64_t simultaneous) {
  if (nodes < 1 || qubits_per_node < 1 || simultaneous < 1) {
    throw Error(ErrorKind::kInvalidPairing, "subcase U needs M, N, R >= 1");
  }
  return {nodes * std::min(simultaneous, qubits_per_node), 2 * simultaneous};
}

}  // namespace sqgpu
