#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apointlab {

enum class ErrorKind {
  PoleAtOne,
  RangeExceeded,
  PoleAtNonpositiveInteger,
  PoleAtOddInteger,
  NearSingularity,
  InvalidArgument,
  BoundaryTooClose,
  NonIntegralWinding,
  RefinementDiverged,
  WindowCountMismatch,
  TooSmallT,
  ParseError,
  NotAscending,
  ResidualTooLarge,
  LengthMismatch,
  ZeroLeadingCoefficient,
  ACaseOne,
  ACaseZero,
  InsufficientPoints,
  InsufficientCoefficients,
  QuadratureNotConverged,
  SeriesTooShort,
  SampleTooCloseToAPoint,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failing operation in the library throws this. `line` is set for
/// zero-table ingestion errors (1-based).
class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what,
               std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw NumericError(kind, what);
}

}  // namespace apointlab
