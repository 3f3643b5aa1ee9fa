#include "birkhoff/errors.hpp"

namespace birkhoff {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidCurve: return "InvalidCurve";
    case ErrorCode::PoleTooClose: return "PoleTooClose";
    case ErrorCode::NoValidPole: return "NoValidPole";
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::CurvesTooClose: return "CurvesTooClose";
    case ErrorCode::NonIntegerResult: return "NonIntegerResult";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::DegenerateFraming: return "DegenerateFraming";
    case ErrorCode::UnstableSelfLinking: return "UnstableSelfLinking";
    case ErrorCode::StepCapExceeded: return "StepCapExceeded";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::MissingJacobian: return "MissingJacobian";
    case ErrorCode::MissingTransverseField: return "MissingTransverseField";
    case ErrorCode::NonIntegerChi: return "NonIntegerChi";
    case ErrorCode::NonIntegerGenus: return "NonIntegerGenus";
    case ErrorCode::ZeroBoundary: return "ZeroBoundary";
    case ErrorCode::TooManyRejections: return "TooManyRejections";
    case ErrorCode::FramingEquationViolated: return "FramingEquationViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

}  // namespace birkhoff
