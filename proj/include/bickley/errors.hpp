#ifndef BICKLEY_ERRORS_HPP
#define BICKLEY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bickley {

/// Argument outside the mathematical domain of an operation (x <= 0, alpha
/// at a Gamma pole, p <= 1, ...). Also used for violated check preconditions.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Result magnitude not representable in double precision.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Quadrature refinement limit reached before the requested tolerance.
/// Carries the last (partial) estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_value,
                   double partial_err)
      : std::runtime_error(what),
        partial_value_(partial_value),
        partial_err_(partial_err) {}

  double partial_value() const noexcept { return partial_value_; }
  double partial_error() const noexcept { return partial_err_; }

 private:
  double partial_value_;
  double partial_err_;
};

}  // namespace bickley

#endif  // BICKLEY_ERRORS_HPP
