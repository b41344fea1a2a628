#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Gamma evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// An iterative method (series, quadrature, extrapolation) did not reach its
// tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A series converged but lost too many digits to cancellation.
class CancellationError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// The truncated contour of a Mellin-Barnes integral still carries weight.
class TruncationError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// Two Talbot inversions with different node counts disagree.
class InversionError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

}  // namespace fracdiff
