#pragma once

#include <stdexcept>
#include <string>

namespace udmap {

/// Argument outside the mathematical domain of an operation (a <= 0, non-finite tau, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A kernel denominator vanished. Cannot happen for epsilon > 0 and finite arguments.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An integrand returned a non-finite sample.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double tau1, double tau2)
      : std::runtime_error(what), tau1_(tau1), tau2_(tau2) {}

  double tau1() const noexcept { return tau1_; }
  double tau2() const noexcept { return tau2_; }

 private:
  double tau1_;
  double tau2_;
};

/// The input coefficient set of a map solve has a vanishing denominator.
class SingularMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical results violate a structural identity (e.g. a non-Hermitian B-matrix).
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid scenario configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace udmap
