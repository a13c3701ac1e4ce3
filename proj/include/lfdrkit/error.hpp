#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lfdrkit {

enum class ErrorCode {
  InvalidArgument,
  InvalidSample,
  DegenerateSample,
  IndexOutOfRange,
  InvalidLambda,
  EmptyGrid,
  DegenerateWeights,
  ZeroMass,
  NonPositiveDensity,
  InvalidTheta,
  InvalidConfig,
  Indeterminate,
  EmptyInput,
  DomainError,
  LengthMismatch,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI, the benchmark harness) can branch on the kind of failure.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace lfdrkit
