#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toda {

enum class ErrorCode {
  InvalidInput,
  NonRealOrMultipleRoots,
  MultiplePole,
  NotASimplePole,
  ConvergenceFailure,
  SingularMatrix,
  PoleEvaluation,
  NotInRatNPrime,
  CoincidentPoints,
  CoincidentPoles,
  ConstraintBracketNotUnit,
  StructureViolation,
  NonFiniteState,
  OverflowGuard,
  DomainViolation,
  SignViolation,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class TodaError : public std::runtime_error {
 public:
  TodaError(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& detail);

}  // namespace toda
