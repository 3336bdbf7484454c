#include "error.hpp"

namespace tanlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOmittedValue: return "OmittedValue";
    case ErrorCode::kClearanceViolation: return "ClearanceViolation";
    case ErrorCode::kLiftDivergence: return "LiftDivergence";
    case ErrorCode::kInvalidRadius: return "InvalidRadius";
    case ErrorCode::kDegenerateMoebius: return "DegenerateMoebius";
    case ErrorCode::kRationalInput: return "RationalInput";
    case ErrorCode::kResonantMultiplier: return "ResonantMultiplier";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kSeriesDivergence: return "SeriesDivergence";
    case ErrorCode::kOrbitEscaped: return "OrbitEscaped";
    case ErrorCode::kIoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace tanlab
