#include "qzak/error.hpp"

namespace qzak {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_dimension: return "invalid-dimension";
    case ErrorCode::invalid_size: return "invalid-size";
    case ErrorCode::invalid_length: return "invalid-length";
    case ErrorCode::representation_mismatch: return "representation-mismatch";
    case ErrorCode::zero_mode_violation: return "zero-mode-violation";
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::under_resolved: return "under-resolved";
    case ErrorCode::box_too_small: return "box-too-small";
    case ErrorCode::nonfinite_field: return "nonfinite-field";
    case ErrorCode::instability_detected: return "instability-detected";
    case ErrorCode::wrap_around_risk: return "wrap-around-risk";
    case ErrorCode::inconsistent_grid: return "inconsistent-grid";
    case ErrorCode::degenerate_input: return "degenerate-input";
    case ErrorCode::schema_violation: return "schema-violation";
    case ErrorCode::range_violation: return "range-violation";
    case ErrorCode::io_failure: return "io-failure";
  }
  return "unknown";
}

}  // namespace qzak
