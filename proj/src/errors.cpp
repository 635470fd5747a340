#include "weylq/errors.hpp"

namespace weylq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MismatchedHbar: return "MismatchedHbar";
    case ErrorKind::MismatchedDimension: return "MismatchedDimension";
    case ErrorKind::NonzeroHbar: return "NonzeroHbar";
    case ErrorKind::ZeroHbar: return "ZeroHbar";
    case ErrorKind::NegativeHbar: return "NegativeHbar";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionTooLow: return "DimensionTooLow";
    case ErrorKind::InvalidIndex: return "InvalidIndex";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::ChemicalPotentialOutOfRange: return "ChemicalPotentialOutOfRange";
    case ErrorKind::NonPositiveTarget: return "NonPositiveTarget";
    case ErrorKind::SubcriticalDensity: return "SubcriticalDensity";
    case ErrorKind::TailToleranceExceeded: return "TailToleranceExceeded";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TailToleranceExceeded:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::BracketFailure:
    case ErrorKind::StepTooLarge:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace weylq
