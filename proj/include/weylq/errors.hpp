#pragma once

#include <stdexcept>
#include <string>

namespace weylq {

enum class ErrorKind {
  // validation
  MismatchedHbar,
  MismatchedDimension,
  NonzeroHbar,
  ZeroHbar,
  NegativeHbar,
  DimensionMismatch,
  DimensionTooLow,
  InvalidIndex,
  InvalidSpec,
  InvalidArgument,
  DomainViolation,
  ChemicalPotentialOutOfRange,
  NonPositiveTarget,
  SubcriticalDensity,
  // numerical certificates
  TailToleranceExceeded,
  QuadratureFailure,
  BracketFailure,
  StepTooLarge,
};

const char* to_string(ErrorKind kind);

// True for failures of a numerical certificate rather than bad input.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }
  bool numerical() const { return is_numerical(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace weylq
