#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qzak {

enum class ErrorCode {
  invalid_dimension,
  invalid_size,
  invalid_length,
  representation_mismatch,
  zero_mode_violation,
  invalid_parameter,
  under_resolved,
  box_too_small,
  nonfinite_field,
  instability_detected,
  wrap_around_risk,
  inconsistent_grid,
  degenerate_input,
  schema_violation,
  range_violation,
  io_failure,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported through this type; `code()`
/// identifies the failure class, `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qzak
