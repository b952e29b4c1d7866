#pragma once

// Analytical cost and communication-qubit budget model for the shared
// gate-pool (S-QGPU) and dedicated entanglement-communication architectures.
//
// A fully connected n-qubit node is priced at epsilon * (a^n - 1). On top of
// the nodes, each architecture pays b per quantum channel and d per optical
// switching path. All functions are pure.

#include <cstdint>

namespace sqgpu {

struct CostParams {
  double epsilon = 0.0;  // USD, per-node cost scale
  double a = 0.0;        // growth base, > 1
  double b = 0.0;        // USD per quantum channel
  double d = 0.0;        // USD per optical switching path

  /// Rounded values used for the published cost curves.
  static CostParams published() noexcept { return {21476.0, 1.11032, 10000.0, 100.0}; }

  void validate() const;
};

struct SystemShape {
  std::int64_t nodes = 0;             // M
  std::int64_t qubits_per_node = 0;   // N
  std::int64_t comm_qubit_total = 0;  // Q

  std::int64_t total_qubits() const noexcept { return nodes * qubits_per_node; }
  void validate() const;
};

/// x qubits engaged on each of y nodes, giving x*y/2 simultaneous remote gates.
struct PairingSpec {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t simultaneous = 0;  // R

  static PairingSpec from_xy(std::int64_t x, std::int64_t y, const SystemShape& shape);
};

struct CommBudget {
  std::int64_t q_entanglement = 0;  // Q_E
  std::int64_t q_sqgpu = 0;         // Q_S

  friend bool operator==(const CommBudget&, const CommBudget&) = default;
};

struct CalibrationPoint {
  std::int64_t qubits = 0;
  double price = 0.0;
};

struct Calibration {
  double epsilon = 0.0;
  double a = 0.0;
};

/// Fits epsilon and a so that epsilon * (a^n - 1) passes through both points.
/// Bracketed bisection on a in (1, 1000]; throws kDegenerateInput for equal
/// qubit counts and kInfeasibleCalibration when no root exists.
Calibration calibrate_cost_params(CalibrationPoint first, CalibrationPoint second);

// Full pairing (R = MN/2). Money values are doubles; overflow yields +inf.
double cost_sqgpu(const SystemShape& shape, const CostParams& params);
double cost_entanglement(const SystemShape& shape, const CostParams& params);
double cost_monolithic(const SystemShape& shape, const CostParams& params);

// Partial pairing.
double cost_sqgpu_partial(const SystemShape& shape, std::int64_t simultaneous,
                          const CostParams& params);
double cost_entanglement_partial_even(const SystemShape& shape, std::int64_t x,
                                      const CostParams& params);
double cost_entanglement_partial_uneven(const SystemShape& shape, std::int64_t simultaneous,
                                        const CostParams& params);

// log10 of the same costs, evaluated in the log domain so that grids with
// M*N in the thousands stay finite.
double lg_cost_sqgpu(const SystemShape& shape, const CostParams& params);
double lg_cost_entanglement(const SystemShape& shape, const CostParams& params);
double lg_cost_monolithic(const SystemShape& shape, const CostParams& params);

enum class RatioKind { kSqgpuOverMonolithic, kSqgpuOverEntanglement };

/// Large-N approximations: M * a^(N - MN) and a^(-N).
double asymptotic_ratio(std::int64_t nodes, std::int64_t qubits_per_node,
                        const CostParams& params, RatioKind which);

/// Subcase E: y nodes each engaging up to x qubits.
CommBudget comm_budget_even(std::int64_t nodes, std::int64_t x, std::int64_t y);
/// Subcase U: R simultaneous gates distributed arbitrarily.
CommBudget comm_budget_uneven(std::int64_t nodes, std::int64_t qubits_per_node,
                              std::int64_t simultaneous);

}  // namespace sqgpu
