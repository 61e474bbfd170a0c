#include "dyad/error.hpp"

namespace dyad {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidTpm: return "InvalidTpm";
    case ErrorCode::kDependencyMismatch: return "DependencyMismatch";
    case ErrorCode::kNotCrossCoupled: return "NotCrossCoupled";
    case ErrorCode::kNotBijective: return "NotBijective";
    case ErrorCode::kZeroMarginal: return "ZeroMarginal";
    case ErrorCode::kKlUndefined: return "KLUndefined";
    case ErrorCode::kAsymmetricMetric: return "AsymmetricMetric";
    case ErrorCode::kInfeasibleTable: return "InfeasibleTable";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kInfiniteDivergence: return "InfiniteDivergence";
    case ErrorCode::kUnsupportedState: return "UnsupportedState";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace dyad
