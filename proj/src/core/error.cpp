#include "core/error.hpp"

namespace flume {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
    case ErrorCode::MissingInput: return "MissingInput";
    case ErrorCode::NonFiniteRate: return "NonFiniteRate";
    case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::CoefficientOutOfRange: return "CoefficientOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveDepth: return "NonPositiveDepth";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::TimestepTooCoarse: return "TimestepTooCoarse";
    case ErrorCode::EmptyHistory: return "EmptyHistory";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::Domain: return "Domain";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::PartialFailure: return "PartialFailure";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace flume
