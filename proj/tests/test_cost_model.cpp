#include <cmath>

#include "doctest.h"
#include "sqgpu/cost_model.hpp"
#include "sqgpu/error.hpp"

using namespace sqgpu;

namespace {

const CostParams kPub = CostParams::published();

// Expected values below were evaluated term by term with mpmath at 40 digits
// using epsilon=21476, a=1.11032, b=10000, d=100.
constexpr double kRel = 1e-12;

bool rel_close(double got, double want, double tol = kRel) {
  return std::fabs(got - want) <= tol * std::fabs(want);
}

SystemShape shape(std::int64_t m, std::int64_t n) { return {m, n, 0}; }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an sqgpu::Error");
  return ErrorKind::kIo;
}

}  // namespace

TEST_CASE("calibration reproduces the published coefficients") {
  const Calibration c = calibrate_cost_params({2, 5000.0}, {50, 4'000'000.0});
  CHECK(c.epsilon == doctest::Approx(21476.0).epsilon(1.0 / 21476.0));
  CHECK(std::fabs(c.a - 1.11032) < 1e-5);
  // Forward evaluation recovers both points.
  CHECK(rel_close(c.epsilon * (std::pow(c.a, 2) - 1), 5000.0, 1e-10));
  CHECK(rel_close(c.epsilon * (std::pow(c.a, 50) - 1), 4'000'000.0, 1e-10));
}

TEST_CASE("calibration recovers a constructed growth base") {
  const double a0 = 1.1;
  const double c = 1234.5;
  const Calibration fit = calibrate_cost_params({2, c}, {4, c * (a0 * a0 + 1)});
  CHECK(fit.a == doctest::Approx(a0).epsilon(1e-12));
  CHECK(fit.epsilon == doctest::Approx(c / (a0 * a0 - 1)).epsilon(1e-10));
}

TEST_CASE("calibration with a golden-ratio root") {
  // eps(a^2-1)=5000, eps(a^3-1)=10000 => a^3 - 2a^2 + 1 = 0, a = (1+sqrt5)/2.
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const Calibration fit = calibrate_cost_params({3, 10000.0}, {2, 5000.0});
  CHECK(fit.a == doctest::Approx(phi).epsilon(1e-12));
  CHECK(fit.epsilon == doctest::Approx(5000.0 / phi).epsilon(1e-12));
}

TEST_CASE("calibration round trip over a grid of points") {
  for (std::int64_t n1 : {2, 3, 7}) {
    for (std::int64_t n2 : {10, 50, 120}) {
      for (double a : {1.01, 1.11032, 1.5, 3.0}) {
        const double eps = 777.0;
        const double c1 = eps * (std::pow(a, n1) - 1);
        const double c2 = eps * (std::pow(a, n2) - 1);
        const Calibration fit = calibrate_cost_params({n1, c1}, {n2, c2});
        CHECK(rel_close(fit.epsilon * (std::pow(fit.a, n1) - 1), c1, 1e-8));
        CHECK(rel_close(fit.epsilon * (std::pow(fit.a, n2) - 1), c2, 1e-8));
      }
    }
  }
}

TEST_CASE("calibration errors") {
  CHECK(kind_of([] { calibrate_cost_params({5, 100.0}, {5, 200.0}); }) == ErrorKind::kDegenerateInput);
  // Price ratio below n2/n1 has no root with a > 1.
  CHECK(kind_of([] { calibrate_cost_params({2, 100.0}, {4, 150.0}); }) ==
        ErrorKind::kInfeasibleCalibration);
  // Decreasing price with more qubits.
  CHECK(kind_of([] { calibrate_cost_params({2, 500.0}, {10, 100.0}); }) ==
        ErrorKind::kInfeasibleCalibration);
  // Needs a > 1000.
  CHECK(kind_of([] { calibrate_cost_params({2, 1.0}, {3, 1e6}); }) == ErrorKind::kInfeasibleCalibration);
  CHECK(kind_of([] { calibrate_cost_params({1, 1.0}, {3, 10.0}); }) == ErrorKind::kInvalidInput);
  CHECK(kind_of([] { calibrate_cost_params({2, 0.0}, {3, 10.0}); }) == ErrorKind::kInvalidInput);
}

TEST_CASE("full-pairing costs against frozen high-precision values") {
  CHECK(rel_close(cost_sqgpu(shape(6, 50), kPub), 36748645.26195483111));
  CHECK(rel_close(cost_sqgpu(shape(6, 5), kPub), 553584.58935485343094));
  CHECK(rel_close(cost_entanglement(shape(6, 5), kPub), 628076.57889418068084));
  CHECK(rel_close(cost_entanglement(shape(6, 50), kPub), 4529607898.3048506411));
  CHECK(rel_close(cost_monolithic(shape(6, 5), kPub), 474428.76117296560532));
  CHECK(rel_close(cost_monolithic(shape(6, 50), kPub), 925554980268603150.24, 1e-11));
  CHECK(rel_close(cost_sqgpu(shape(1, 2), kPub), 30399.6766990848));
  CHECK(rel_close(cost_entanglement(shape(1, 2), kPub), 31563.691577160552954));
}

TEST_CASE("unit-coefficient costs are exact") {
  const CostParams unit{1.0, 2.0, 0.0, 0.0};
  CHECK(cost_sqgpu(shape(1, 2), unit) == 6.0);
  CHECK(cost_entanglement(shape(1, 1), unit) == 3.0);
  CHECK(cost_monolithic(shape(1, 1), CostParams{7.0, 3.0, 0.0, 0.0}) == 14.0);
  CHECK(cost_sqgpu_partial(shape(2, 2), 1, unit) == 9.0);
  CHECK(cost_entanglement_partial_even(shape(1, 1), 1, unit) == 3.0);
}

TEST_CASE("odd M*N is rejected for full pairing only") {
  CHECK(kind_of([] { cost_sqgpu(shape(3, 5), kPub); }) == ErrorKind::kInvalidShape);
  CHECK(kind_of([] { lg_cost_sqgpu(shape(3, 5), kPub); }) == ErrorKind::kInvalidShape);
  CHECK(std::isfinite(cost_entanglement(shape(3, 5), kPub)));
  CHECK(std::isfinite(cost_sqgpu_partial(shape(3, 5), 7, kPub)));
}

TEST_CASE("parameter and shape validation") {
  CHECK(kind_of([] { cost_entanglement(shape(6, 5), CostParams{0.0, 1.1, 0, 0}); }) ==
        ErrorKind::kInvalidInput);
  CHECK(kind_of([] { cost_entanglement(shape(6, 5), CostParams{1.0, 1.0, 0, 0}); }) ==
        ErrorKind::kInvalidInput);
  CHECK(kind_of([] { cost_entanglement(shape(6, 5), CostParams{1.0, 1.1, -1, 0}); }) ==
        ErrorKind::kInvalidInput);
  CHECK(kind_of([] { cost_entanglement(shape(0, 5), kPub); }) == ErrorKind::kInvalidShape);
  CHECK(kind_of([] { PairingSpec::from_xy(3, 3, shape(6, 50)); }) == ErrorKind::kInvalidPairing);
  const PairingSpec p = PairingSpec::from_xy(4, 3, shape(6, 50));
  CHECK(p.simultaneous == 6);
}

TEST_CASE("monolithic cost overflows to infinity, log form stays finite") {
  const SystemShape big = shape(64, 300);
  CHECK(std::isinf(cost_monolithic(big, kPub)));
  CHECK(lg_cost_monolithic(big, kPub) == doctest::Approx(876.93667830644307782).epsilon(1e-12));
  CHECK(lg_cost_sqgpu(big, kPub) == doctest::Approx(19.772582196283859138).epsilon(1e-12));
  CHECK(lg_cost_entanglement(big, kPub) == doctest::Approx(33.407031022748583528).epsilon(1e-12));
}

TEST_CASE("log10 costs agree with direct evaluation where finite") {
  for (std::int64_t m : {1, 2, 6, 13}) {
    for (std::int64_t n : {2, 10, 50, 100}) {
      const SystemShape s = shape(m, n);
      CHECK(lg_cost_entanglement(s, kPub) == doctest::Approx(std::log10(cost_entanglement(s, kPub))));
      CHECK(lg_cost_monolithic(s, kPub) == doctest::Approx(std::log10(cost_monolithic(s, kPub))));
      CHECK(lg_cost_sqgpu(s, kPub) == doctest::Approx(std::log10(cost_sqgpu(s, kPub))));
    }
  }
}

TEST_CASE("partial pairing costs") {
  CHECK(rel_close(cost_sqgpu_partial(shape(6, 50), 30, kPub), 28948664.66000974311));
  CHECK(rel_close(cost_entanglement_partial_even(shape(6, 50), 10, kPub), 73377103.81207377222));
  CHECK(rel_close(cost_entanglement_partial_uneven(shape(6, 50), 5, kPub), 44486065.073509455724));
  CHECK(cost_entanglement_partial_uneven(shape(6, 50), 60, kPub) ==
        cost_entanglement(shape(6, 50), kPub));

  CHECK(kind_of([] { cost_sqgpu_partial(shape(6, 50), 0, kPub); }) == ErrorKind::kInvalidPairing);
  CHECK(kind_of([] { cost_sqgpu_partial(shape(6, 50), 151, kPub); }) == ErrorKind::kInvalidPairing);
  CHECK(kind_of([] { cost_entanglement_partial_even(shape(6, 50), 51, kPub); }) ==
        ErrorKind::kInvalidPairing);
  CHECK(kind_of([] { cost_entanglement_partial_uneven(shape(6, 50), 0, kPub); }) ==
        ErrorKind::kInvalidPairing);
}

TEST_CASE("reduction identities hold bit for bit") {
  for (std::int64_t m = 1; m <= 12; ++m) {
    for (std::int64_t n = 1; n <= 120; ++n) {
      const SystemShape s = shape(m, n);
      if ((m * n) % 2 == 0) CHECK(cost_sqgpu_partial(s, m * n / 2, kPub) == cost_sqgpu(s, kPub));
      CHECK(cost_entanglement_partial_even(s, n, kPub) == cost_entanglement(s, kPub));
      CHECK(cost_entanglement_partial_uneven(s, n, kPub) == cost_entanglement(s, kPub));
      CHECK(cost_entanglement_partial_uneven(s, n + 10, kPub) == cost_entanglement(s, kPub));
    }
  }
}

TEST_CASE("costs strictly increase in M and N") {
  // Log form keeps the full grid finite. S-QGPU steps N by 2 when M is odd.
  for (std::int64_t m = 1; m <= 64; ++m) {
    for (std::int64_t n = 2; n <= 300; ++n) {
      const SystemShape s = shape(m, n);
      CHECK_LT(lg_cost_entanglement(s, kPub), lg_cost_entanglement(shape(m, n + 1), kPub));
      CHECK_LT(lg_cost_monolithic(s, kPub), lg_cost_monolithic(shape(m, n + 1), kPub));
      if (m < 64) {
        CHECK_LT(lg_cost_entanglement(s, kPub), lg_cost_entanglement(shape(m + 1, n), kPub));
        CHECK_LT(lg_cost_monolithic(s, kPub), lg_cost_monolithic(shape(m + 1, n), kPub));
      }
      if ((m * n) % 2 == 0) {
        const std::int64_t step_n = m % 2 == 0 ? 1 : 2;
        CHECK_LT(lg_cost_sqgpu(s, kPub), lg_cost_sqgpu(shape(m, n + step_n), kPub));
        const std::int64_t step_m = n % 2 == 0 ? 1 : 2;
        if (m + step_m <= 64) CHECK_LT(lg_cost_sqgpu(s, kPub), lg_cost_sqgpu(shape(m + step_m, n), kPub));
      }
    }
  }
}

TEST_CASE("S-QGPU is cheaper than dedicated entanglement at M=6") {
  for (std::int64_t n = 2; n <= 300; ++n) {
    CHECK_LT(lg_cost_sqgpu(shape(6, n), kPub), lg_cost_entanglement(shape(6, n), kPub));
  }
}

TEST_CASE("asymptotic ratios") {
  CHECK(asymptotic_ratio(2, 100, kPub, RatioKind::kSqgpuOverMonolithic) ==
        doctest::Approx(5.70e-5).epsilon(0.001));
  CHECK(asymptotic_ratio(9, 0, kPub, RatioKind::kSqgpuOverEntanglement) == 1.0);
  CHECK(asymptotic_ratio(6, 150, kPub, RatioKind::kSqgpuOverEntanglement) ==
        doctest::Approx(1.52e-7).epsilon(0.005));

  const double exact_se = cost_sqgpu(shape(6, 150), kPub) / cost_entanglement(shape(6, 150), kPub);
  CHECK(std::fabs(exact_se / asymptotic_ratio(6, 150, kPub, RatioKind::kSqgpuOverEntanglement) - 1) < 0.02);
  const double exact_s0 = cost_sqgpu(shape(2, 100), kPub) / cost_monolithic(shape(2, 100), kPub);
  CHECK(std::fabs(exact_s0 / asymptotic_ratio(2, 100, kPub, RatioKind::kSqgpuOverMonolithic) - 1) < 0.01);
}

TEST_CASE("communication budgets, subcase E") {
  CHECK(comm_budget_even(6, 4, 3) == CommBudget{24, 12});
  CHECK(comm_budget_even(6, 4, 6) == CommBudget{24, 24});
  CHECK(comm_budget_even(10, 2, 2) == CommBudget{20, 4});
  CHECK(kind_of([] { comm_budget_even(6, 3, 3); }) == ErrorKind::kInvalidPairing);
  CHECK(kind_of([] { comm_budget_even(6, 2, 7); }) == ErrorKind::kInvalidPairing);
}

TEST_CASE("communication budgets, subcase U") {
  CHECK(comm_budget_uneven(6, 50, 10) == CommBudget{60, 20});
  CHECK(comm_budget_uneven(6, 50, 60) == CommBudget{300, 120});
  CHECK(comm_budget_uneven(2, 50, 50) == CommBudget{100, 100});
}

TEST_CASE("Q_S never exceeds Q_E, with the stated equality cases") {
  for (std::int64_t m = 2; m <= 12; ++m) {
    for (std::int64_t n = 1; n <= 20; ++n) {
      for (std::int64_t y = 1; y <= m; ++y) {
        for (std::int64_t x = 1; x <= n; ++x) {
          if ((x * y) % 2 != 0) continue;
          const CommBudget b = comm_budget_even(m, x, y);
          CHECK(b.q_sqgpu <= b.q_entanglement);
          CHECK((b.q_sqgpu == b.q_entanglement) == (y == m));
          CHECK(b.q_sqgpu >= 2 * (x * y / 2));
        }
      }
      for (std::int64_t r = 1; 2 * r <= m * n; ++r) {
        const CommBudget b = comm_budget_uneven(m, n, r);
        CHECK(b.q_sqgpu <= b.q_entanglement);
        CHECK((b.q_sqgpu == b.q_entanglement) == ((m == 2 && r <= n) || 2 * r == m * n));
        CHECK(b.q_entanglement >= 2 * r);
      }
    }
  }
}
