#pragma once

#include <stdexcept>
#include <string>

namespace cesaro {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Vector length does not match the operator dimension.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Request exceeds a size guard (dense materialization, maximum degree).
class ResourceError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// An iterative method stopped before meeting its tolerance.
/// `estimate()` is the best value reached.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

private:
  double estimate_;
};

} // namespace cesaro
