#pragma once

#include <stdexcept>
#include <string>

namespace ergocert {

enum class ErrorKind {
  InvalidSymbol,
  EmptyLabel,
  DimensionTooLarge,
  NotHermitian,
  NotPowerOfTwoDimension,
  DimensionMismatch,
  NotUnitary,
  NotADistribution,
  LengthMismatch,
  DegenerateExtremalLevels,
  MissingHamiltonian,
  ConvergenceFailure,
  InfeasibleSet,
  NonNestedConstraints,
  EmptyGrid,
  OutsideBlochBall,
  InvalidDelta,
  ZeroShots,
  ParseError,
  EmptyInput,
  InvalidArgument,
};

const char* error_kind_name(ErrorKind kind);

/// Library-wide exception carrying a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an infeasible measurement set is detected. Carries the
/// smallest uniform epsilon inflation that restores feasibility, as advice
/// for the caller; it is never applied automatically.
class InfeasibleSetError : public Error {
 public:
  InfeasibleSetError(const std::string& message, double advice_epsilon)
      : Error(ErrorKind::InfeasibleSet, message),
        advice_epsilon_(advice_epsilon) {}

  double advice_epsilon() const { return advice_epsilon_; }

 private:
  double advice_epsilon_;
};

}  // namespace ergocert
