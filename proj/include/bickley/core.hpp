#ifndef BICKLEY_CORE_HPP
#define BICKLEY_CORE_HPP

#include "bickley/errors.hpp"

namespace bickley {

/// A computed function value with an absolute error estimate.
struct KiValue {
  double value = 0.0;
  double abs_err_est = 0.0;
};

/// Quadrature controls shared by every evaluation path.
///
/// rel_tol must lie in [2^-50, 1); max_refinements in [1, 30].
/// truncation_guard scales the tail cutoff L of the integration interval.
struct EvalConfig {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_refinements = 14;
  double truncation_guard = 1.0;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// Order range for which evaluation is attempted at all. The accuracy
/// contract is stated on |alpha| <= 20, x in [1e-6, 700].
inline constexpr double kMaxAbsOrder = 50.0;

/// ln Gamma(z) for z > 0.
double log_gamma(double z);

/// Ki_alpha(x) = int_0^inf exp(-x cosh t) (cosh t)^(-alpha) dt.
KiValue ki(double alpha, double x, const EvalConfig& cfg = {});

/// Ki_alpha(0) = sqrt(pi) Gamma(alpha/2) / (2 Gamma((alpha+1)/2)), alpha > 0.
double ki_at_zero(double alpha);

/// m-th derivative in x: (-1)^m Ki_{alpha-m}(x).
KiValue ki_x_derivative(double alpha, double x, int m, const EvalConfig& cfg = {});

/// m-th derivative in alpha:
/// (-1)^m int_0^inf exp(-x cosh t) (cosh t)^(-alpha) [log cosh t]^m dt.
KiValue ki_alpha_derivative(double alpha, double x, int m,
                            const EvalConfig& cfg = {});

/// Ki_alpha(x) through the Bessel fractional integral
/// (1/Gamma(alpha)) int_x^inf (t-x)^(alpha-1) K_0(t) dt, with K_0 = Ki_0
/// evaluated by ki(). Independent of ki(alpha, x) except for the kernel.
KiValue ki_via_fractional(double alpha, double x, const EvalConfig& cfg = {});

namespace detail {

/// Upper end T of the truncated integration interval [0, T] for the
/// integrand exp(-x cosh t) (cosh t)^(-alpha) [log cosh t]^m.
double truncation_point(double alpha, double x, int m, const EvalConfig& cfg);

/// Bound on int_T^inf of the scaled integrand
/// exp(-x (cosh t - 1)) (cosh t)^(-alpha) [log cosh t]^m.
double scaled_tail_bound(double alpha, double x, int m, double t_end);

}  // namespace detail

}  // namespace bickley

#endif  // BICKLEY_CORE_HPP
