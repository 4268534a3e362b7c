#include "weilforge/error.hpp"

namespace weilforge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::DependentBasis: return "DependentBasis";
    case ErrorKind::BasisNotUnital: return "BasisNotUnital";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::TooManyVariables: return "TooManyVariables";
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::VariableNotLast: return "VariableNotLast";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotZeroDimensionalTop: return "NotZeroDimensionalTop";
    case ErrorKind::ImproperIdeal: return "ImproperIdeal";
    case ErrorKind::CapTooSmall: return "CapTooSmall";
    case ErrorKind::OpenTable: return "OpenTable";
    case ErrorKind::NotLinear: return "NotLinear";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::FieldSpecError: return "FieldSpecError";
    case ErrorKind::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::UnknownCheckId: return "UnknownCheckId";
  }
  return "Unknown";
}

}  // namespace weilforge
