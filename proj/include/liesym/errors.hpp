#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liesym {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed symbolic operation: division by zero, radical misuse, uncleared
/// denominators handed to coefficient collection.
class SymbolicError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public SymbolicError {
 public:
  using SymbolicError::SymbolicError;
};

/// An expected generator uses a monomial the ansatz window does not contain.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// [X_i, X_j] left the span of a basis.
class ClosureError : public Error {
 public:
  ClosureError(std::size_t i, std::size_t j, const std::string& bracket)
      : Error("bracket [X" + std::to_string(i + 1) + ", X" + std::to_string(j + 1) +
              "] = " + bracket + " is not in the span of the basis"),
        first(i),
        second(j) {}
  std::size_t first;
  std::size_t second;
};

/// A reduced-system symmetry does not have the shape needed to extract xi.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Non-autonomous input, wrong dimension, bad pivot and similar contract violations.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

/// Numerical verification hit a singularity or a non-monotone reparametrization.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace liesym
