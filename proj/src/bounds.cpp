#include "bickley/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bickley {

namespace {

// ln(sqrt(pi)/2)
const double kLogHalfSqrtPi = 0.5 * std::log(std::numbers::pi) - std::numbers::ln2;

void require_positive_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("bound requires a positive finite x");
  }
}

double holder_conjugate(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("Hoelder exponent p must exceed 1");
  }
  return p / (p - 1.0);
}

}  // namespace

double upper_bound_agm(double alpha, double x) {
  if (!(alpha > 0.25)) throw DomainError("agm bound requires alpha > 1/4");
  require_positive_x(x);
  return std::exp(kLogHalfSqrtPi - x + log_gamma(alpha - 0.25) -
                  log_gamma(alpha) - 0.25 * std::log(x));
}

double upper_bound_power(double alpha, double x) {
  if (!(alpha > 0.0)) throw DomainError("power bound requires alpha > 0");
  require_positive_x(x);
  return std::exp(kLogHalfSqrtPi + alpha * std::log(alpha) + log_gamma(alpha) -
                  alpha * (1.0 + std::log(x)) - log_gamma(alpha + 0.5));
}

Bracket bilateral_bracket(double alpha, double x, double p) {
  if (!(alpha > 0.0)) throw DomainError("bilateral bounds require alpha > 0");
  require_positive_x(x);
  const double q = holder_conjugate(p);

  Bracket b;
  // Ki_{alpha-1}(0) is infinite for alpha <= 1; the clamped bound is then 0.
  if (alpha > 1.0) {
    b.lower = std::max(ki_at_zero(alpha) - x * ki_at_zero(alpha - 1.0), 0.0);
  }

  const double aq = alpha * q;
  const double log_ratio = log_gamma(0.5 * aq) - log_gamma(0.5 * (aq + 1.0));
  const double log_upper = 0.5 * std::log(std::numbers::pi) -
                           (1.0 / q + 0.5 / p) * std::numbers::ln2 -
                           std::log(p) / (2.0 * p) + log_ratio / q - x -
                           std::log(x) / (2.0 * p);
  b.upper = std::exp(log_upper);
  return b;
}

KiValue bilateral_mixed_bound(double alpha, double x, double p,
                              const EvalConfig& cfg) {
  if (!(alpha > 0.0)) throw DomainError("bilateral bounds require alpha > 0");
  require_positive_x(x);
  const double q = holder_conjugate(p);
  const auto k0 = ki(0.0, x * p, cfg);
  const double log_mixed =
      std::log(k0.value) / p + std::log(ki_at_zero(alpha * q)) / q;
  const double mixed = std::exp(log_mixed);
  return {mixed, mixed * (k0.abs_err_est / k0.value) / p};
}

Bracket partial_alpha_bracket(double alpha, double x, const EvalConfig& cfg) {
  const auto km1 = ki(alpha - 1.0, x, cfg);
  const auto k0 = ki(alpha, x, cfg);
  const auto k1 = ki(alpha + 1.0, x, cfg);
  const auto k2 = ki(alpha + 2.0, x, cfg);
  Bracket b;
  b.lower = 0.5 * (k1.value - km1.value);
  b.upper = 0.5 * (k2.value - k0.value);
  b.lower_err = 0.5 * (k1.abs_err_est + km1.abs_err_est);
  b.upper_err = 0.5 * (k2.abs_err_est + k0.abs_err_est);
  return b;
}

KiValue carlson_bound(double alpha, double x, const EvalConfig& cfg) {
  const auto a = ki(2.0 * alpha, 2.0 * x, cfg);
  const auto b = ki(2.0 * alpha - 2.0, 2.0 * x, cfg);
  const double c = 0.5 * std::numbers::pi * std::numbers::pi;
  return {c * a.value * b.value,
          c * (a.abs_err_est * b.value + a.value * b.abs_err_est)};
}

double kimberling_constant(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("Kimberling constant requires alpha > 0");
  return 1.0 / ki_at_zero(alpha);
}

}  // namespace bickley
