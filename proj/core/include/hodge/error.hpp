#pragma once

#include <stdexcept>
#include <string>

namespace hodge {

enum class ErrorCode {
  NotSymmetric,
  NotPositiveDefinite,
  DimensionMismatch,
  GenusMismatch,
  NotUnitScalar,
  OddComponent,
  ZeroVector,
  BadSampleCount,
  BadDimension,
  BadParameters,
  RankMismatch,
  InputNotRankOne,
  NotIndependent,
  NotInWperp,
  ConfigInvalid,
  SuiteUnknown,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hodge
