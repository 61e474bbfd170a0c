#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dyad {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidTpm,
  kDependencyMismatch,
  kNotCrossCoupled,
  kNotBijective,
  kZeroMarginal,
  kKlUndefined,
  kAsymmetricMetric,
  kInfeasibleTable,
  kStepTooLarge,
  kGridMismatch,
  kNotUnitary,
  kInfiniteDivergence,
  kUnsupportedState,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dyad
