#pragma once

#include <stdexcept>
#include <string>

namespace derham {

enum class ErrorCode {
  DegreeOverflow,
  GridMismatch,
  ShapeMismatch,
  DecayViolation,
  TooFewTimeSlices,
  SingularPoint,
  NotClosed,
  UnsupportedCombination,
  InvalidProblem,
  MeshTooShort,
  StabilityViolation,
  NoBracket,
  IoError,
  ConfigError,
};

const char* error_code_name(ErrorCode code);

/// Thrown on contract violations; expected outcomes (blow-up, max-iter)
/// are reported through status enums instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace derham
