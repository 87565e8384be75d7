#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dynrigid {

enum class ErrorKind {
  NonConvex,
  SymmetryViolation,
  ResolutionTooLow,
  NotNormalized,
  InvalidArgument,
  DegenerateChord,
  RootBracketFailure,
  DegenerateAngle,
  OptimizerStalled,
  OrderingCollapse,
  NonMonotone,
  FitUnstable,
  BadGamma,
  StepUnstable,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonConvex: return "NonConvex";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
    case ErrorKind::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateChord: return "DegenerateChord";
    case ErrorKind::RootBracketFailure: return "RootBracketFailure";
    case ErrorKind::DegenerateAngle: return "DegenerateAngle";
    case ErrorKind::OptimizerStalled: return "OptimizerStalled";
    case ErrorKind::OrderingCollapse: return "OrderingCollapse";
    case ErrorKind::NonMonotone: return "NonMonotone";
    case ErrorKind::FitUnstable: return "FitUnstable";
    case ErrorKind::BadGamma: return "BadGamma";
    case ErrorKind::StepUnstable: return "StepUnstable";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace dynrigid
