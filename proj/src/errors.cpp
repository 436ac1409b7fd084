#include "dualcalc/errors.hpp"

namespace dualcalc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::zero_divisor: return "zero_divisor";
    case ErrorCode::invalid_interval: return "invalid_interval";
    case ErrorCode::invalid_partition: return "invalid_partition";
    case ErrorCode::domain: return "domain_error";
    case ErrorCode::syntax: return "syntax_error";
    case ErrorCode::max_depth_exceeded: return "max_depth_exceeded";
    case ErrorCode::invalid_epsilon: return "invalid_epsilon";
    case ErrorCode::precondition_failed: return "precondition_failed";
    case ErrorCode::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

}  // namespace dualcalc
