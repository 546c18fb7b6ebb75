#include "hcert/errors.hpp"

namespace hcert {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveC1: return "NonPositiveC1";
    case ErrorCode::EnvelopeViolated: return "EnvelopeViolated";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DegenerateWindow: return "DegenerateWindow";
    case ErrorCode::PsiNotInCone: return "PsiNotInCone";
    case ErrorCode::PsiZero: return "PsiZero";
    case ErrorCode::NegativeKphi: return "NegativeKphi";
    case ErrorCode::MissingNormBound: return "MissingNormBound";
    case ErrorCode::FunctionalValidationFailed: return "FunctionalValidationFailed";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SpectralRadiusTooLarge: return "SpectralRadiusTooLarge";
    case ErrorCode::NotContractive: return "NotContractive";
    case ErrorCode::MissingLimits: return "MissingLimits";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::ExpressionError: return "ExpressionError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string where, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + " in " + where + ": " + message),
      code_(code),
      where_(std::move(where)) {}

}  // namespace hcert
