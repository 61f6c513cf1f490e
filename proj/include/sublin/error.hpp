#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sublin {

enum class ErrorCode {
  invalid_argument,
  grid_mismatch,
  singular_system,
  evaluation_failure,
  no_positive_eigenvalue,
  transversality_failure,
  no_global_subsolution,
  ordering_violated,
  non_monotone,
  precondition_failed,
  empty_constraint_set,
  missing_tail_samples,
  unknown_weight,
  config_error,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. The code is stable and is what the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sublin
