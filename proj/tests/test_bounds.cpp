#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bessel_oracle.hpp"
#include "bickley/bounds.hpp"
#include "bickley/core.hpp"

using namespace bickley;
using oracle::rel_diff;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

// Ki_alpha(0) from std::tgamma, independent of the log-space path.
double at_zero_direct(double a) {
  return kSqrtPi * std::tgamma(a / 2) / (2 * std::tgamma((a + 1) / 2));
}

}  // namespace

TEST_CASE("AGM upper bound") {
  const double expected = kSqrtPi * std::tgamma(0.75) / 2 * std::exp(-1.0);
  CHECK(rel_diff(upper_bound_agm(1.0, 1.0), expected) <= 1e-14);
  CHECK(rel_diff(upper_bound_agm(1.0, 1.0), 0.3995160712382084861) <= 1e-14);
  CHECK(upper_bound_agm(1.0, 1.0) >= ki(1.0, 1.0).value);

  const double near_pole = upper_bound_agm(0.25 + 1e-9, 1.0);
  CHECK(std::isfinite(near_pole));
  const double eps = (0.25 + 1e-9) - 0.25;
  CHECK(rel_diff(near_pole, kSqrtPi * std::tgamma(eps) / (2 * std::tgamma(0.25 + 1e-9)) *
                                std::exp(-1.0)) <= 1e-9);
  CHECK(near_pole > 1e7);
  CHECK(near_pole >= ki(0.25 + 1e-9, 1.0).value);

  for (double a : {0.3, 1.0, 4.0, 15.0})
    for (double x : {0.01, 1.0, 50.0}) {
      const double direct = kSqrtPi * std::exp(-x) * std::tgamma(a - 0.25) /
                            (2 * std::tgamma(a) * std::pow(x, 0.25));
      CHECK(rel_diff(upper_bound_agm(a, x), direct) <= 1e-13);
    }
  CHECK_THROWS_AS(upper_bound_agm(0.25, 1.0), DomainError);
  CHECK_THROWS_AS(upper_bound_agm(1.0, 0.0), DomainError);
}

TEST_CASE("power upper bound") {
  CHECK(rel_diff(upper_bound_power(1.0, 1.0), std::exp(-1.0)) <= 1e-14);
  CHECK(rel_diff(upper_bound_power(2.0, 1.0), 8.0 / (3.0 * std::exp(2.0))) <= 1e-14);
  for (double a : {0.5, 1.0, 2.0, 5.0})
    for (double x : {0.5, 1.0, 5.0}) {
      CAPTURE(a);
      CAPTURE(x);
      CHECK(upper_bound_power(a, x) >= ki(a, x).value);
    }
  // Large orders stay finite through log space.
  CHECK(std::isfinite(upper_bound_power(150.0, 2.0)));
  CHECK_THROWS_AS(upper_bound_power(0.0, 1.0), DomainError);
}

TEST_CASE("bilateral bracket") {
  CHECK(rel_diff(bilateral_bracket(2.0, 0.1, 2.0).lower, 1.0 - kPi / 20.0) <= 1e-14);
  CHECK(bilateral_bracket(0.5, 1.0, 2.0).lower == 0.0);
  CHECK(bilateral_bracket(1.0, 1.0, 2.0).lower == 0.0);
  // Clamp once x Ki_{alpha-1}(0) exceeds Ki_alpha(0).
  CHECK(bilateral_bracket(3.0, 5.0, 2.0).lower == 0.0);

  for (double a : {0.5, 2.0, 7.0})
    for (double x : {0.2, 3.0})
      for (double p : {1.25, 2.0, 5.0}) {
        const double q = p / (p - 1);
        const double upper = kSqrtPi / (std::pow(2.0, 1 / q + 1 / (2 * p)) * std::pow(p, 1 / (2 * p))) *
                             std::pow(std::tgamma(a * q / 2) / std::tgamma((a * q + 1) / 2), 1 / q) *
                             std::exp(-x) / std::pow(x, 1 / (2 * p));
        CHECK(rel_diff(bilateral_bracket(a, x, p).upper, upper) <= 1e-12);
      }

  CHECK_THROWS_AS(bilateral_bracket(1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(bilateral_bracket(1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(bilateral_bracket(0.0, 1.0, 2.0), DomainError);
}

TEST_CASE("bilateral chain at alpha = 1, x = 1, p = 2") {
  const auto b = bilateral_bracket(1.0, 1.0, 2.0);
  const auto mixed = bilateral_mixed_bound(1.0, 1.0, 2.0);
  const double k = ki(1.0, 1.0).value;
  CHECK(b.lower <= k);
  CHECK(k <= mixed.value);
  CHECK(mixed.value <= b.upper);
  // [K_0(2)]^(1/2) [Ki_2(0)]^(1/2) with Ki_2(0) = 1.
  CHECK(rel_diff(mixed.value, std::sqrt(oracle::bessel_k0(2.0))) <= 1e-12);
}

TEST_CASE("mixed bound against its closed form") {
  for (double a : {0.5, 1.5, 3.0})
    for (double p : {1.5, 3.0}) {
      const double x = 0.8;
      const double q = p / (p - 1);
      const double expected = std::pow(oracle::bessel_k0(x * p), 1 / p) *
                              std::pow(at_zero_direct(a * q), 1 / q);
      CHECK(rel_diff(bilateral_mixed_bound(a, x, p).value, expected) <= 1e-12);
    }
}

TEST_CASE("bracket on the order derivative") {
  const auto b0 = partial_alpha_bracket(0.0, 1.0);
  const auto d0 = ki_alpha_derivative(0.0, 1.0, 1);
  CHECK(b0.lower < d0.value);
  CHECK(d0.value < b0.upper);
  CHECK(rel_diff(b0.lower, 0.5 * (ki(1.0, 1.0).value - ki(-1.0, 1.0).value)) <= 1e-14);
  CHECK(rel_diff(b0.upper, 0.5 * (ki(2.0, 1.0).value - ki(0.0, 1.0).value)) <= 1e-14);

  const auto b1 = partial_alpha_bracket(1.0, 1.0);
  const double d1 = ki_alpha_derivative(1.0, 1.0, 1).value;
  CHECK(b1.lower < d1);
  CHECK(d1 < b1.upper);

  for (double a : {-3.0, -0.5, 0.0, 2.0, 6.0})
    for (double x : {0.1, 1.0, 10.0}) {
      const auto b = partial_alpha_bracket(a, x);
      CHECK(b.lower < 0.0);
      CHECK(b.upper < 0.0);
      CHECK(b.lower < b.upper);
    }

  const auto w = partial_alpha_bracket(2.0, 5.0);
  CHECK(w.upper - w.lower > 2.0 * (w.lower_err + w.upper_err));
}

TEST_CASE("Carlson bound") {
  const double k = ki(1.0, 1.0).value;
  CHECK(carlson_bound(1.0, 1.0).value >= k * k * k * k);

  const double k0 = oracle::bessel_k0(1.0);
  const double expected = kPi * kPi / 2 * oracle::bessel_k0(2.0) *
                          (oracle::bessel_k0(2.0) + oracle::bessel_k1(2.0) / 2.0);
  const auto c0 = carlson_bound(0.0, 1.0);
  CHECK(rel_diff(c0.value, expected) <= 1e-12);
  CHECK(c0.value >= k0 * k0 * k0 * k0);

  for (double a : {-4.0, 0.5, 9.0})
    for (double x : {0.05, 2.0, 30.0}) CHECK(carlson_bound(a, x).value > 0.0);
}

TEST_CASE("Kimberling constant") {
  CHECK(rel_diff(kimberling_constant(1.0), 2.0 / kPi) <= 1e-15);
  CHECK(rel_diff(kimberling_constant(2.0), 1.0) <= 1e-15);
  CHECK(rel_diff(kimberling_constant(3.0), 4.0 / kPi) <= 1e-15);
  for (double a : {0.1, 2.7, 40.0}) {
    CHECK(rel_diff(kimberling_constant(a) * ki_at_zero(a), 1.0) <= 1e-14);
  }
  CHECK_THROWS_AS(kimberling_constant(0.0), DomainError);
}
