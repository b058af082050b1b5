#pragma once

#include <stdexcept>
#include <string>

namespace spekkens {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different phase spaces or Hilbert spaces.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its hard size cap.
class GuardExceeded : public Error {
 public:
  GuardExceeded(const std::string& what, unsigned long long required,
                unsigned long long bound)
      : Error(what + ": requires " + std::to_string(required) +
              " elements, guard is " + std::to_string(bound)),
        required_(required),
        bound_(bound) {}

  unsigned long long required() const { return required_; }
  unsigned long long bound() const { return bound_; }

 private:
  unsigned long long required_;
  unsigned long long bound_;
};

/// A knowledge set that is not isotropic was used as an epistemic state.
class EpistemicViolation : public Error {
 public:
  using Error::Error;
};

/// Input that is structurally invalid (bad wires, non-projective sets, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Text that failed to parse; carries the 1-based column of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t column)
      : Error("column " + std::to_string(column) + ": " + message),
        message_(message),
        column_(column) {}

  std::size_t column() const { return column_; }
  /// The message without the column prefix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t column_;
};

}  // namespace spekkens
