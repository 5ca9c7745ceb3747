#pragma once

#include <stdexcept>
#include <string>

namespace meshfree {

enum class ErrorCode {
  kInvalidInterval,
  kTooFewNodes,
  kInvalidNodeSet,
  kEmptyStar,
  kSingularMomentMatrix,
  kSingularRegularizedMatrix,
  kUnsupportedFunctionalOrder,
  kSingularCollocationMatrix,
  kSingularJacobian,
  kNewtonDiverged,
  kStepUnderflow,
  kNegativeState,
  kInvalidConfig,
};

/// Library-wide exception carrying a machine-checkable code next to the
/// human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Configuration/usage mistakes, as opposed to numeric failures discovered
  /// mid-computation. The CLI maps these to exit code 2, the rest to 3.
  bool is_config_error() const noexcept {
    switch (code_) {
      case ErrorCode::kInvalidInterval:
      case ErrorCode::kTooFewNodes:
      case ErrorCode::kInvalidNodeSet:
      case ErrorCode::kUnsupportedFunctionalOrder:
      case ErrorCode::kInvalidConfig:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace meshfree
