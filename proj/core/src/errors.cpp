#include "toda/errors.hpp"

namespace toda {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonRealOrMultipleRoots: return "NonRealOrMultipleRoots";
    case ErrorCode::MultiplePole: return "MultiplePole";
    case ErrorCode::NotASimplePole: return "NotASimplePole";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::PoleEvaluation: return "PoleEvaluation";
    case ErrorCode::NotInRatNPrime: return "NotInRatNPrime";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::CoincidentPoles: return "CoincidentPoles";
    case ErrorCode::ConstraintBracketNotUnit: return "ConstraintBracketNotUnit";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::OverflowGuard: return "OverflowGuard";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::SignViolation: return "SignViolation";
  }
  return "Unknown";
}

TodaError::TodaError(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& detail) { throw TodaError(code, detail); }

}  // namespace toda
