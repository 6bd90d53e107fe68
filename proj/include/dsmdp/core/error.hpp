#pragma once

#include <stdexcept>
#include <string>

namespace dsmdp {

enum class ErrorCode {
  invalid_argument,
  config_invalid,
  budget_exceeded,
  state_budget_exceeded,
  rejection_budget_exceeded,
  not_converged,
  support_unsolvable,
  q_underflow,
  delta_zero,
  delta_too_small,
  degenerate_denominator,
  missing_param,
  insufficient_data,
  mass_shortfall,
  io_error,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by iterative solvers; carries the final sup-norm residual.
class NotConverged : public Error {
 public:
  NotConverged(std::size_t iterations, double residual);
  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace dsmdp
