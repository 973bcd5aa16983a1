#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flume {

enum class ErrorCode {
  InvalidArgument = 1,
  InvalidGeometry,
  ResolutionTooCoarse,
  Config,
  Io,
  MissingInput,
  NonFiniteRate,
  NonPositiveDensity,
  CflViolation,
  CoefficientOutOfRange,
  LengthMismatch,
  NonPositiveDepth,
  InvalidParams,
  NonConvergence,
  TimestepTooCoarse,
  EmptyHistory,
  InvalidSpec,
  Domain,
  TooFewSamples,
  PartialFailure,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a typed error code. Every failure raised by the core
/// library is an Error so the C boundary can map it onto a status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace flume
