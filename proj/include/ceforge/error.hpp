#pragma once

#include <stdexcept>
#include <string>

namespace ceforge {

// Numeric values are shared with the C API (see ceforge.h).
enum class ErrorCode : int {
  BoundExceeded = 10,
  NotJoinIrreducible = 11,
  NotConvex = 12,
  NotADownSet = 13,
  NotAPoset = 14,
  DimensionMismatch = 20,
  NotADifferential = 21,
  NotAChainMap = 22,
  NotInvertible = 23,
  NotAField = 24,
  NotNested = 30,
  HypothesisViolated = 31,
  PreconditionFailed = 40,
  LadderNotCommuting = 41,
  AgreementFailure = 42,
  CEIsoInconsistent = 43,
  GradingMismatch = 50,
  ParseError = 60,
  ValidationError = 61,
  Internal = 99,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ceforge
