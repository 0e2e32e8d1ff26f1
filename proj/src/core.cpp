#include "bickley/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "bickley/quadrature.hpp"

namespace bickley {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxDerivativeOrder = 24;
constexpr double kMaxTruncation = 700.0;

void require_argument(double alpha, double x) {
  if (!std::isfinite(alpha)) {
    throw DomainError("order alpha must be finite");
  }
  if (std::abs(alpha) > kMaxAbsOrder) {
    throw DomainError("order |alpha| = " + std::to_string(std::abs(alpha)) +
                      " exceeds the supported range 50");
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("argument x must be positive and finite, got " +
                      std::to_string(x));
  }
}

quad::TanhSinhOptions options_from(const EvalConfig& cfg, double abs_tol) {
  quad::TanhSinhOptions opts;
  opts.rel_tol = cfg.rel_tol;
  opts.abs_tol = abs_tol;
  opts.max_levels = cfg.max_refinements;
  opts.min_levels = std::min(4, cfg.max_refinements);
  return opts;
}

// Log-derivative magnitude of the integrand at t, i.e. -(d/dt) log f(t).
double decay_rate(double alpha, double x, int m, double t) {
  const double th = std::tanh(t);
  double rate = x * std::sinh(t) + alpha * th;
  if (m > 0) rate -= m * th / std::log(std::cosh(t));
  return rate;
}

KiValue finish(double scaled, double scaled_err, double x, const char* what) {
  const double scale = std::exp(-x);
  const double value = scale * scaled;
  if (!std::isfinite(value)) {
    throw RangeError(std::string(what) + ": result overflows double precision");
  }
  if (value == 0.0 && scaled != 0.0) {
    throw RangeError(std::string(what) + ": result underflows double precision");
  }
  const double err = scale * scaled_err + 16.0 * kEps * std::abs(value);
  return {value, err};
}

}  // namespace

void EvalConfig::validate() const {
  if (!(rel_tol >= std::ldexp(1.0, -50)) || !(rel_tol < 1.0)) {
    throw DomainError("rel_tol must lie in [2^-50, 1)");
  }
  if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol)) {
    throw DomainError("abs_tol must be finite and non-negative");
  }
  if (max_refinements < 1 || max_refinements > 30) {
    throw DomainError("max_refinements must lie in [1, 30]");
  }
  if (!(truncation_guard > 0.0) || !std::isfinite(truncation_guard)) {
    throw DomainError("truncation_guard must be positive");
  }
}

double log_gamma(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("log_gamma requires a positive finite argument");
  }
  return boost::math::lgamma(z);
}

namespace detail {

double truncation_point(double alpha, double x, int m, const EvalConfig& cfg) {
  const double base = -std::log(cfg.rel_tol * 1e-3) + 40.0;
  const double l = cfg.truncation_guard * base;
  const double log_l = std::log(l);
  const double target = l + std::max(0.0, -alpha) * log_l + m * log_l;
  double cosh_t = std::max(2.0, target / x);
  double t = std::min(std::acosh(cosh_t), kMaxTruncation);
  // Beyond T the log-derivative must stay bounded away from zero so the
  // geometric tail bound applies.
  while (t < kMaxTruncation &&
         decay_rate(alpha, x, m, t) <= 0.5 * decay_rate(alpha, x, 0, t)) {
    cosh_t *= 2.0;
    t = std::min(std::acosh(cosh_t), kMaxTruncation);
  }
  return t;
}

double scaled_tail_bound(double alpha, double x, int m, double t_end) {
  const double sh = std::sinh(0.5 * t_end);
  const double ch1 = 2.0 * sh * sh;
  const double lc = std::log1p(ch1);
  double f_end = std::exp(-x * ch1 - alpha * lc);
  if (m > 0) f_end *= std::pow(lc, m);
  const double rate = decay_rate(alpha, x, m, t_end);
  if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
  return f_end / rate;
}

}  // namespace detail

KiValue ki_alpha_derivative(double alpha, double x, int m,
                            const EvalConfig& cfg) {
  cfg.validate();
  require_argument(alpha, x);
  if (m < 0 || m > kMaxDerivativeOrder) {
    throw DomainError("derivative order m must lie in [0, 24]");
  }

  const double t_end = detail::truncation_point(alpha, x, m, cfg);
  // exp(-x) is factored out of the integrand and restored in finish().
  auto integrand = [alpha, x, m](double t) {
    const double sh = std::sinh(0.5 * t);
    const double ch1 = 2.0 * sh * sh;
    const double lc = std::log1p(ch1);
    double v = std::exp(-x * ch1 - alpha * lc);
    if (m > 0) v *= std::pow(lc, m);
    return v;
  };

  const double scale = std::exp(-x);
  const double abs_tol = scale > 0.0 ? cfg.abs_tol / scale : 0.0;
  const auto res = quad::tanh_sinh(integrand, 0.0, t_end, options_from(cfg, abs_tol));
  const double tail = detail::scaled_tail_bound(alpha, x, m, t_end);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;

  if (!std::isfinite(res.value)) {
    throw RangeError("Ki: integrand overflows double precision");
  }
  if (!res.converged) {
    throw ConvergenceError(
        "Ki quadrature did not reach rel_tol within max_refinements",
        sign * scale * res.value, scale * (res.level_diff + tail));
  }
  auto out = finish(res.value, res.level_diff + tail, x, "Ki");
  out.value *= sign;
  return out;
}

KiValue ki(double alpha, double x, const EvalConfig& cfg) {
  return ki_alpha_derivative(alpha, x, 0, cfg);
}

double ki_at_zero(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("Ki_alpha(0) is finite only for alpha > 0");
  }
  return 0.5 * std::sqrt(std::numbers::pi) *
         std::exp(log_gamma(0.5 * alpha) - log_gamma(0.5 * (alpha + 1.0)));
}

KiValue ki_x_derivative(double alpha, double x, int m, const EvalConfig& cfg) {
  if (m < 0 || m > kMaxDerivativeOrder) {
    throw DomainError("derivative order m must lie in [0, 24]");
  }
  auto v = ki(alpha - m, x, cfg);
  if (m % 2 != 0) v.value = -v.value;
  return v;
}

KiValue ki_via_fractional(double alpha, double x, const EvalConfig& cfg) {
  cfg.validate();
  require_argument(alpha, x);
  if (!(alpha > 0.0)) {
    throw DomainError("fractional-integral form requires alpha > 0");
  }

  // Largest relative error reported by any kernel evaluation.
  double kernel_rel_err = 0.0;
  auto k0 = [&](double t) {
    const auto v = ki(0.0, t, cfg);
    kernel_rel_err = std::max(kernel_rel_err, v.abs_err_est / v.value);
    return v.value;
  };

  // Near segment s = t - x in [0, 1], with u = s^alpha:
  //   int_0^1 s^(alpha-1) K_0(x+s) ds = (1/alpha) int_0^1 K_0(x + u^(1/alpha)) du
  const double inv_alpha = 1.0 / alpha;
  auto near = [&](double u) { return k0(x + std::pow(u, inv_alpha)); };

  // Far segment s in [1, 1 + S].
  const double l = cfg.truncation_guard * (-std::log(cfg.rel_tol * 1e-3));
  const double span = l + std::max(0.0, alpha - 1.0) * std::log(l) + 5.0;
  auto far = [&](double s) { return std::pow(s, alpha - 1.0) * k0(x + s); };

  const auto opts = options_from(cfg, cfg.abs_tol);
  const auto near_res = quad::tanh_sinh(near, 0.0, 1.0, opts);
  const auto far_res = quad::tanh_sinh(far, 1.0, 1.0 + span, opts);

  const double inv_gamma = std::exp(-log_gamma(alpha));
  const double inv_gamma1 = std::exp(-log_gamma(alpha + 1.0));

  // K_0(y) <= sqrt(pi/(2y)) e^-y bounds the neglected piece beyond 1 + S.
  const double s_end = 1.0 + span;
  double tail = std::pow(s_end, alpha - 1.0) *
                std::sqrt(std::numbers::pi / (2.0 * (x + s_end))) *
                std::exp(-x - s_end);
  if (alpha - 1.0 > 0.0) tail /= (1.0 - (alpha - 1.0) / s_end);
  tail *= inv_gamma;

  const double value = inv_gamma1 * near_res.value + inv_gamma * far_res.value;
  const double err = inv_gamma1 * near_res.level_diff +
                     inv_gamma * far_res.level_diff + tail +
                     kernel_rel_err * std::abs(value) + 16.0 * kEps * std::abs(value);

  if (!near_res.converged || !far_res.converged) {
    throw ConvergenceError(
        "fractional-integral quadrature did not reach rel_tol", value, err);
  }
  return {value, err};
}

}  // namespace bickley
