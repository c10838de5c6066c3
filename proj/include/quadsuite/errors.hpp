#pragma once

#include <stdexcept>
#include <string>

namespace quadsuite {

// Input data violates a documented invariant (non-Hermitian state, malformed file, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arguments outside the mathematical domain of an operation (unbounded set where a
// bounded one is required, degenerate quadrature pair, angle set outside [0, 2pi)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Base class for failures of a numerical contract: the inputs were valid but the
// requested accuracy or range cannot be delivered.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CoverageError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConditioningError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnderdeterminedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace quadsuite
