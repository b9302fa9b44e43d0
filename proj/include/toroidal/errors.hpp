#pragma once

#include <stdexcept>
#include <string>

namespace toroidal {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Point on the limit circle or the symmetry axis, where the toroidal
// chart is singular.
class DegenerateLocusError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Adaptive quadrature ran out of subdivisions before meeting the
// tolerance. Carries the estimate reached so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial_value, double partial_error)
      : std::runtime_error(what), partial_value_(partial_value), partial_error_(partial_error) {}
  double partial_value() const { return partial_value_; }
  double partial_error() const { return partial_error_; }

 private:
  double partial_value_;
  double partial_error_;
};

// Normal-equation matrix too ill-conditioned for a trustworthy solve.
class IllConditionedError : public std::runtime_error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

}  // namespace toroidal
