#pragma once

#include <stdexcept>
#include <string>

namespace coulomb_momentum {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The hypergeometric representation of Q_nu(z) was asked for z below its
/// working threshold; callers should fall back to another evaluator.
class SeriesRangeError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Kernel evaluated on its diagonal (p == p'), where it is log-singular.
class SingularityError : public DomainError {
public:
  using DomainError::DomainError;
};

/// An iterative scheme ran out of budget. Carries the best estimate reached.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

private:
  double best_estimate_;
  double error_estimate_;
};

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw DomainError(message);
}

}  // namespace detail
}  // namespace coulomb_momentum
