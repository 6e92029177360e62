#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ricker {

enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  PreconditionViolated,
  NonMonotoneDetected,
  MaxIterExceeded,
  NotAFixedPoint,
  BracketFailure,
  CountMismatch,
  Infeasible,
  NonConvergence,
  ContradictionDetected,
  WitnessConstructionFailed,
  NoCrossing,
  Overflow,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NonMonotoneDetected: return "NonMonotoneDetected";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::NotAFixedPoint: return "NotAFixedPoint";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ContradictionDetected: return "ContradictionDetected";
    case ErrorCode::WitnessConstructionFailed: return "WitnessConstructionFailed";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Single exception type for the library; the code tells parameter
/// validation problems apart from numeric failures.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  bool is_validation_error() const noexcept { return code_ == ErrorCode::InvalidArgument; }

 private:
  ErrorCode code_;
};

}  // namespace ricker
