#pragma once

#include <stdexcept>
#include <string>

namespace pcw {

enum class ErrorCode {
  PartialAssignment,
  TooManyVariables,
  TrivialClause,
  InvalidParam,
  Cycle,
  MultipleSinks,
  IndegreeExceeded,
  IllegalMove,
  Incomplete,
  StateSpaceExceeded,
  Infeasible,
  NotAnAxiom,
  BadPremises,
  RuleMismatch,
  WidthExceeded,
  NotImplied,
  NotARefutation,
  InvalidInput,
  FormulaSatisfied,
  InvalidPebbling,
  WhitePebblePresent,
  CapExceeded,
  AuthoritarianFunction,
  NotMinimal,
  NotDerivable,
  Parse,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, long index = -1);

  ErrorCode code() const { return code_; }
  // Step or move index the error refers to, -1 if none.
  long index() const { return index_; }
  // The text without the code and index prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  long index_;
  std::string message_;
};

// Cap-class errors map to CLI exit code 3.
bool is_cap_error(ErrorCode code);

}  // namespace pcw
