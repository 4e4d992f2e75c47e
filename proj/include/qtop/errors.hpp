#pragma once

#include <stdexcept>
#include <string>

namespace qtop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands built over different primes were combined.
class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("operands belong to different prime contexts") {}
};

// Exact division by h requested for an element outside (h).
class NotDivisible : public Error {
 public:
  using Error::Error;
};

// No power of kappa moves the element into Z[q].
class PhaseError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A mathematical consistency check failed; always a bug or corrupt input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qtop
