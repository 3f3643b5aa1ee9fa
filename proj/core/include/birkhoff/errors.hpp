#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace birkhoff {

// Failure kinds surfaced by the library. The CLI prints name() on stderr.
enum class ErrorCode {
  InvalidArgument,
  InvalidCurve,
  PoleTooClose,
  NoValidPole,
  TooFewVertices,
  CurvesTooClose,
  NonIntegerResult,
  DegenerateProjection,
  EpsilonTooLarge,
  DegenerateFraming,
  UnstableSelfLinking,
  StepCapExceeded,
  NotPeriodic,
  NotNormal,
  MissingJacobian,
  MissingTransverseField,
  NonIntegerChi,
  NonIntegerGenus,
  ZeroBoundary,
  TooManyRejections,
  FramingEquationViolated,
  ParseError,
  Unsupported,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  // Message without the error name.
  const std::string& detail() const noexcept { return detail_; }

  // Same error with `context` prepended to the message.
  Error within(const std::string& context) const { return Error(code_, context + ": " + detail_); }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace birkhoff
