#include "derham/errors.hpp"

namespace derham {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DecayViolation: return "DecayViolation";
    case ErrorCode::TooFewTimeSlices: return "TooFewTimeSlices";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::MeshTooShort: return "MeshTooShort";
    case ErrorCode::StabilityViolation: return "StabilityViolation";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace derham
