#ifndef BICKLEY_BOUNDS_HPP
#define BICKLEY_BOUNDS_HPP

#include "bickley/core.hpp"

namespace bickley {

/// Two-sided enclosure. lower <= upper whenever both are finite. The error
/// fields are zero for purely closed-form sides.
struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  double lower_err = 0.0;
  double upper_err = 0.0;
};

// Closed-form upper bounds. All Gamma ratios are formed in log space.

/// sqrt(pi) e^-x Gamma(alpha - 1/4) / (2 Gamma(alpha) x^(1/4)) >= Ki_alpha(x),
/// alpha > 1/4.
double upper_bound_agm(double alpha, double x);

/// sqrt(pi) alpha^alpha Gamma(alpha) / (2 (e x)^alpha Gamma(alpha + 1/2))
/// >= Ki_alpha(x), alpha > 0.
double upper_bound_power(double alpha, double x);

/// Hoelder-type enclosure with exponent p > 1, q = p/(p-1):
///   lower = [Ki_alpha(0) - x Ki_{alpha-1}(0)]_+ (0 when alpha <= 1, where
///           Ki_{alpha-1}(0) diverges),
///   upper = sqrt(pi) / (2^(1/q + 1/(2p)) p^(1/(2p)))
///           * [Gamma(alpha q/2) / Gamma((alpha q+1)/2)]^(1/q) e^-x / x^(1/(2p)).
Bracket bilateral_bracket(double alpha, double x, double p);

/// Intermediate side of the same enclosure, [K_0(x p)]^(1/p) [Ki_{alpha q}(0)]^(1/q),
/// with K_0 = Ki_0 evaluated by quadrature.
KiValue bilateral_mixed_bound(double alpha, double x, double p,
                              const EvalConfig& cfg = {});

/// Bracket on dKi_alpha(x)/dalpha:
///   (Ki_{alpha+1} - Ki_{alpha-1})/2  <  d/dalpha Ki_alpha  <  (Ki_{alpha+2} - Ki_alpha)/2.
/// Both sides are negative.
Bracket partial_alpha_bracket(double alpha, double x, const EvalConfig& cfg = {});

/// (pi^2/2) Ki_{2 alpha}(2x) Ki_{2 alpha - 2}(2x) >= [Ki_alpha(x)]^4.
KiValue carlson_bound(double alpha, double x, const EvalConfig& cfg = {});

/// 2 Gamma((alpha+1)/2) / (sqrt(pi) Gamma(alpha/2)) = 1 / Ki_alpha(0), alpha > 0.
double kimberling_constant(double alpha);

}  // namespace bickley

#endif  // BICKLEY_BOUNDS_HPP
