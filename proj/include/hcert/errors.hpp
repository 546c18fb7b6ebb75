#pragma once

#include <stdexcept>
#include <string>

namespace hcert {

enum class ErrorCode {
  InvalidArgument,
  NonPositiveC1,
  EnvelopeViolated,
  QuadratureFailure,
  DegenerateWindow,
  PsiNotInCone,
  PsiZero,
  NegativeKphi,
  MissingNormBound,
  FunctionalValidationFailed,
  NegativeEntry,
  NoConvergence,
  SpectralRadiusTooLarge,
  NotContractive,
  MissingLimits,
  NonFinite,
  DomainViolation,
  Diverged,
  InternalInconsistency,
  ExpressionError,
  ConfigError,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library. `where` names the operation that failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string where, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::string where_;
};

}  // namespace hcert
