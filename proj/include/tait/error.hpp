#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tait {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text. `offset` is the 0-based character position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Evaluation left the domain of a function, or produced a non-finite value.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A geometric precondition (regularity, star-shapedness, branch choice, ...)
// failed at parameter `t`.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double t)
      : Error(what + " at t=" + std::to_string(t)), t_(t) {}

  double t() const noexcept { return t_; }

 private:
  double t_;
};

class FamilyMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidConic : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown that is not a domain error (rank deficiency, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Bad input files or curve specifications.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace tait
