#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gplastic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse of zero in Q(rho), or division by the zero rational function.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A rational function was evaluated where its denominator vanishes.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Objects living on charts of different dimension were combined.
class ArityMismatch : public Error {
 public:
  using Error::Error;
};

/// Textual input could not be parsed. `column` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t column)
      : Error(message + " (column " + std::to_string(column) + ")"), column_(column) {}

  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// A constructor or check rejected its input. When the rejection is caused
/// by an identity that does not hold, `residual` carries the nonzero residual.
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& message, std::string residual = {})
      : Error(message), residual_(std::move(residual)) {}

  const std::string& residual() const noexcept { return residual_; }

 private:
  std::string residual_;
};

}  // namespace gplastic
