#include "clh2d/core.hpp"

namespace clh2d {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSurface: return "NonSurface";
    case ErrorCode::BadPolygon: return "BadPolygon";
    case ErrorCode::IntersectionViolation: return "IntersectionViolation";
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NormExceeded: return "NormExceeded";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DimThree: return "DimThree";
    case ErrorCode::NotAnticommuting: return "NotAnticommuting";
    case ErrorCode::CalibrationConflict: return "CalibrationConflict";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::TooLargeForProver: return "TooLargeForProver";
    case ErrorCode::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorCode::NoSpecialEdge: return "NoSpecialEdge";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::NoCenter: return "NoCenter";
    case ErrorCode::BadSpectrum: return "BadSpectrum";
    case ErrorCode::BackendUnsupported: return "BackendUnsupported";
    case ErrorCode::OddExcitations: return "OddExcitations";
    case ErrorCode::NotDefectedForm: return "NotDefectedForm";
    case ErrorCode::MethodUnsupported: return "MethodUnsupported";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<std::string> details)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code),
      details_(std::move(details)) {}

}  // namespace clh2d
