#include "lfdrkit/error.hpp"

namespace lfdrkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::InvalidSample:
      return "InvalidSample";
    case ErrorCode::DegenerateSample:
      return "DegenerateSample";
    case ErrorCode::IndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorCode::InvalidLambda:
      return "InvalidLambda";
    case ErrorCode::EmptyGrid:
      return "EmptyGrid";
    case ErrorCode::DegenerateWeights:
      return "DegenerateWeights";
    case ErrorCode::ZeroMass:
      return "ZeroMass";
    case ErrorCode::NonPositiveDensity:
      return "NonPositiveDensity";
    case ErrorCode::InvalidTheta:
      return "InvalidTheta";
    case ErrorCode::InvalidConfig:
      return "InvalidConfig";
    case ErrorCode::Indeterminate:
      return "Indeterminate";
    case ErrorCode::EmptyInput:
      return "EmptyInput";
    case ErrorCode::DomainError:
      return "DomainError";
    case ErrorCode::LengthMismatch:
      return "LengthMismatch";
  }
  return "Unknown";
}

}  // namespace lfdrkit
