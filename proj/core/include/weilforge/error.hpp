#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weilforge {

enum class ErrorKind {
  ReducibleModulus,
  DependentBasis,
  BasisNotUnital,
  InvalidField,
  DivisionByZero,
  RingMismatch,
  UnboundVariable,
  ZeroPolynomial,
  TooManyVariables,
  ExponentOverflow,
  DegreeCapExceeded,
  NotHomogeneous,
  VariableNotLast,
  EmptyMatrix,
  CapExceeded,
  NotZeroDimensionalTop,
  ImproperIdeal,
  CapTooSmall,
  OpenTable,
  NotLinear,
  SyntaxError,
  UnknownVariable,
  FieldSpecError,
  InfeasibleSpec,
  BudgetExceeded,
  UnknownCheckId,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers can branch
/// on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace weilforge
