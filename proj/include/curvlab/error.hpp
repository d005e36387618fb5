#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvlab {

/// Default tolerance for validation and identity checks.
inline constexpr double kDefaultTolerance = 1e-10;

enum class ErrorCode {
  NotSquare,
  OddDimension,
  NotAntiInvolution,
  NotOrthogonal,
  NotComplexIsometry,
  DimensionNotMultipleOf4,
  DimensionMismatch,
  InvalidDimension,
  SymmetryViolation,
  LineStructureMismatch,
  DegenerateVector,
  NotCompatible,
  QNotConstant,
  QNotZero,
  EquivalenceViolation,
  NotInA3,
  UnknownConstraintTag,
  InconsistentOracle,
  NonUniqueSolution,
  NotSymmetricOperator,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace curvlab
