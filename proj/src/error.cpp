#include "apointlab/error.hpp"

namespace apointlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::RangeExceeded: return "RangeExceeded";
    case ErrorKind::PoleAtNonpositiveInteger: return "PoleAtNonpositiveInteger";
    case ErrorKind::PoleAtOddInteger: return "PoleAtOddInteger";
    case ErrorKind::NearSingularity: return "NearSingularity";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BoundaryTooClose: return "BoundaryTooClose";
    case ErrorKind::NonIntegralWinding: return "NonIntegralWinding";
    case ErrorKind::RefinementDiverged: return "RefinementDiverged";
    case ErrorKind::WindowCountMismatch: return "WindowCountMismatch";
    case ErrorKind::TooSmallT: return "TooSmallT";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotAscending: return "NotAscending";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::ACaseOne: return "ACaseOne";
    case ErrorKind::ACaseZero: return "ACaseZero";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::InsufficientCoefficients: return "InsufficientCoefficients";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::SeriesTooShort: return "SeriesTooShort";
    case ErrorKind::SampleTooCloseToAPoint: return "SampleTooCloseToAPoint";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace apointlab
