#pragma once

#include <stdexcept>
#include <string>

namespace msm {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes; library callers can catch Error to handle them uniformly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Query outside the range covered by a table (sieve limit, zero height).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or series acceleration did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Allocation or enumeration budget exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A sampled class-membership check failed (strict mode only).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace msm
