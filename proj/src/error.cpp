#include "mumford/error.hpp"

namespace mumford {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kPoleHit: return "PoleHit";
    case ErrorCode::kPoleInsideDisc: return "PoleInsideDisc";
    case ErrorCode::kPoleInsideDomain: return "PoleInsideDomain";
    case ErrorCode::kReductionDiverged: return "ReductionDiverged";
    case ErrorCode::kDomainInvalid: return "DomainInvalid";
    case ErrorCode::kDiscsIntersect: return "DiscsIntersect";
    case ErrorCode::kRootInsideDisc: return "RootInsideDisc";
    case ErrorCode::kAssumptionViolated: return "AssumptionViolated";
    case ErrorCode::kUnalignedDisc: return "UnalignedDisc";
    case ErrorCode::kNotAdmissible: return "NotAdmissible";
    case ErrorCode::kCoincidentPoints: return "CoincidentPoints";
    case ErrorCode::kNotLocallyConstant: return "NotLocallyConstant";
    case ErrorCode::kRatioNotConstant: return "RatioNotConstant";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kReducible: return "Reducible";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace mumford
