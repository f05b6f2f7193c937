#pragma once

#include <stdexcept>
#include <string>

namespace mumford {

enum class ErrorCode {
  kInvalidArgument,
  kPoleHit,
  kPoleInsideDisc,
  kPoleInsideDomain,
  kReductionDiverged,
  kDomainInvalid,
  kDiscsIntersect,
  kRootInsideDisc,
  kAssumptionViolated,
  kUnalignedDisc,
  kNotAdmissible,
  kCoincidentPoints,
  kNotLocallyConstant,
  kRatioNotConstant,
  kNumericalBreakdown,
  kSingularSystem,
  kReducible,
  kParseError,
  kValidationError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mumford
