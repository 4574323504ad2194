#pragma once

#include <stdexcept>
#include <string>

namespace wavespace {

/// Operands of incompatible dimension (windows, points, vectors).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A window or analyzing vector is not normalized for its representation.
class AdmissibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Interpolation data lies outside the image of the Gram matrix.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search (e.g. for a spacing radius) ran out of range without success.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural identity that must hold did not. Never expected to fire.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wavespace
