#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecr {

enum class ErrorCode {
  EmptyInput,
  NegativeEntry,
  NotNormalized,
  RankTooLargeForN,
  CountExceedsTotal,
  InvalidDimension,
  DimensionTooLargeForOracle,
  InvalidRange,
  InvalidEpsilon,
  DegenerateVariance,
  OutOfDomain,
  InternalConsistency,
  InvalidSpec,
  IoFailure,
  ParamError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::RankTooLargeForN: return "RankTooLargeForN";
    case ErrorCode::CountExceedsTotal: return "CountExceedsTotal";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::DimensionTooLargeForOracle: return "DimensionTooLargeForOracle";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::ParamError: return "ParamError";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ecr
