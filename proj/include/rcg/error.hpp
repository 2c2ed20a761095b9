#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcg {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scalar or matrix text. Carries a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class DomainErrorKind {
  DivisionByZero,
  NotPositive,
  UnsupportedExponent,
  SingularMatrix,
  DimensionMismatch,
  UnsolvableSpectrum,
  RepeatedEigenvalue,
  DegenerateLeadingSpectrum,
  UnsupportedType,
  NotInGroup,
  NotNilpotent,
  NotUnipotent,
  ZeroInput,
  ZeroParameter,
  NotInUTheta,
  NotClosed,
  NotInImage,
  NotInChamber,
  NoRelatingElement,
};

const char* to_string(DomainErrorKind kind);

/// A mathematically invalid request: singular input, det != 1, degenerate spectrum, ...
class DomainError : public Error {
 public:
  DomainError(DomainErrorKind kind, const std::string& what)
      : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  DomainErrorKind kind() const { return kind_; }

 private:
  DomainErrorKind kind_;
};

/// The sign of a truncated series cannot be decided from its known terms.
class IndeterminateSign : public Error {
 public:
  using Error::Error;
};

/// An interval-certified oracle could not separate its answer from the boundary.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace rcg
