#include "dsmdp/core/error.hpp"

#include <sstream>

namespace dsmdp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::config_invalid: return "config_invalid";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::state_budget_exceeded: return "state_budget_exceeded";
    case ErrorCode::rejection_budget_exceeded: return "rejection_budget_exceeded";
    case ErrorCode::not_converged: return "not_converged";
    case ErrorCode::support_unsolvable: return "support_unsolvable";
    case ErrorCode::q_underflow: return "q_underflow";
    case ErrorCode::delta_zero: return "delta_zero";
    case ErrorCode::delta_too_small: return "delta_too_small";
    case ErrorCode::degenerate_denominator: return "degenerate_denominator";
    case ErrorCode::missing_param: return "missing_param";
    case ErrorCode::insufficient_data: return "insufficient_data";
    case ErrorCode::mass_shortfall: return "mass_shortfall";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {
std::string not_converged_message(std::size_t iterations, double residual) {
  std::ostringstream os;
  os << "no convergence after " << iterations << " iterations (residual " << residual << ")";
  return os.str();
}
}  // namespace

NotConverged::NotConverged(std::size_t iterations, double residual)
    : Error(ErrorCode::not_converged, not_converged_message(iterations, residual)),
      iterations_(iterations),
      residual_(residual) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace dsmdp
