#include "ceforge/error.hpp"

namespace ceforge {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::NotJoinIrreducible: return "NotJoinIrreducible";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::NotADownSet: return "NotADownSet";
    case ErrorCode::NotAPoset: return "NotAPoset";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotADifferential: return "NotADifferential";
    case ErrorCode::NotAChainMap: return "NotAChainMap";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotAField: return "NotAField";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::LadderNotCommuting: return "LadderNotCommuting";
    case ErrorCode::AgreementFailure: return "AgreementFailure";
    case ErrorCode::CEIsoInconsistent: return "CEIsoInconsistent";
    case ErrorCode::GradingMismatch: return "GradingMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace ceforge
