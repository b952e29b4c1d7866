#include "sqgpu/error.hpp"

namespace sqgpu {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kInvalidShape: return "invalid shape";
    case ErrorKind::kInvalidPairing: return "invalid pairing";
    case ErrorKind::kInfeasibleCalibration: return "infeasible calibration";
    case ErrorKind::kDegenerateInput: return "degenerate input";
    case ErrorKind::kInfeasibleSchedule: return "infeasible schedule";
    case ErrorKind::kOracleTooLarge: return "oracle input too large";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

}  // namespace sqgpu
