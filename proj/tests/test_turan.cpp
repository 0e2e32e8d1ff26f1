#include <doctest.h>

#include <cmath>
#include <vector>

#include "bessel_oracle.hpp"
#include "bickley/turan.hpp"

using namespace bickley;
using oracle::rel_diff;

namespace {

// 1/2 int_0^inf int_0^inf e^{-x(ch t + ch s)} (ch t ch s)^-alpha (ch t - ch s)^2
// by the trapezoid rule on [0, T]^2; the integrand is even in both variables.
double trapezoid_2x2(double alpha, double x) {
  const double h = 0.01;
  const int n = static_cast<int>(8.0 / h);
  std::vector<double> c(n + 1), w(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i] = std::cosh(i * h);
    w[i] = (i == 0 ? 0.5 : 1.0) * h * std::exp(-x * c[i]) * std::pow(c[i], -alpha);
  }
  long double sum = 0.0L;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < i; ++j) sum += w[i] * w[j] * (c[i] - c[j]) * (c[i] - c[j]);
  return static_cast<double>(sum);
}

double z_score(const McEstimate& mc, double exact) {
  return (mc.value - exact) / mc.std_error;
}

}  // namespace

TEST_CASE("Hankel matrix entries") {
  const auto h = hankel_matrix({0.5, 2, 1.3});
  REQUIRE(h.values.size() == 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(h.values(j, k) == ki(0.5 - static_cast<double>(j + k), 1.3).value);
      CHECK(h.errors(j, k) >= 0.0);
    }
  CHECK(h.values.is_symmetric());

  CHECK_THROWS_AS(hankel_matrix({0.0, 5, 1.0}), DomainError);
  CHECK_THROWS_AS(hankel_matrix({0.0, -1, 1.0}), DomainError);
  CHECK_THROWS_AS(hankel_matrix({0.0, 1, 0.0}), DomainError);
  CHECK_THROWS_AS(hankel_matrix({NAN, 1, 1.0}), DomainError);
}

TEST_CASE("1x1 determinant is the function itself") {
  for (double a : {-2.0, 0.0, 1.5, 4.0})
    for (double x : {0.1, 1.0, 7.0}) {
      const auto d = det_ki({a, 0, x});
      const auto k = ki(a, x);
      CHECK(d.value == k.value);
      CHECK(d.abs_err_est == k.abs_err_est);
    }
}

TEST_CASE("2x2 determinants from their entries") {
  const double k21 = ki(2.0, 1.0).value, k11 = ki(1.0, 1.0).value;
  const double k0 = oracle::bessel_k0(1.0), k1 = oracle::bessel_k1(1.0);
  const auto d2 = det_ki({2.0, 1, 1.0});
  CHECK(d2.value > 0.0);
  CHECK(rel_diff(d2.value, k21 * k0 - k11 * k11) <= 1e-12);

  const auto d0 = det_ki({0.0, 1, 1.0});
  CHECK(d0.value > 0.0);
  CHECK(rel_diff(d0.value, k0 * (k0 + k1) - k1 * k1) <= 1e-12);
  CHECK(d0.abs_err_est < 1e-12 * d0.value);
}

TEST_CASE("double-integral oracle") {
  for (auto [a, x] : {std::pair{2.0, 1.0}, std::pair{0.0, 2.0}, std::pair{4.0, 0.5},
                      std::pair{-2.0, 1.0}}) {
    CAPTURE(a);
    CAPTURE(x);
    const auto o = det_oracle_2x2(a, x);
    const auto d = det_ki({a, 1, x});
    CHECK(o.value > 0.0);
    CHECK(rel_diff(o.value, d.value) <= 1e-8);
    CHECK(rel_diff(o.value, trapezoid_2x2(a, x)) <= 1e-10);
  }
  EvalConfig starved;
  starved.max_refinements = 4;
  starved.rel_tol = 1e-15;
  CHECK_THROWS_AS(det_oracle_2x2(2.0, 1.0, starved), ConvergenceError);
  CHECK_THROWS_AS(det_oracle_2x2(2.0, -1.0), DomainError);
}

TEST_CASE("Monte-Carlo oracle agrees within three standard errors") {
  McConfig mc;
  mc.samples = 1'000'000;
  const auto e1 = det_oracle_mc({2.0, 1, 1.0}, mc);
  CHECK(std::abs(z_score(e1, det_ki({2.0, 1, 1.0}).value)) < 3.0);
  CHECK(!e1.variance_exploded);
  CHECK(e1.count == mc.samples);
  CHECK(rel_diff(e1.normalizer, std::pow(oracle::bessel_k0(1.0), 2) / 2.0) <= 1e-12);

  const auto e2 = det_oracle_mc({3.0, 2, 1.0}, mc);
  CHECK(e2.value > 0.0);
  CHECK(std::abs(z_score(e2, det_ki({3.0, 2, 1.0}).value)) < 3.0);
  CHECK(e2.as_ki().abs_err_est == e2.std_error);
}

TEST_CASE("pooled Monte-Carlo runs") {
  McConfig a, b, both;
  a.samples = b.samples = 200'000;
  a.seed = 1;
  b.seed = 2;
  both.samples = 400'000;
  const HankelSpec spec{2.0, 1, 1.0};
  const auto ea = det_oracle_mc(spec, a);
  const auto eb = det_oracle_mc(spec, b);
  const auto pooled = McEstimate::pooled(ea, eb);
  CHECK(pooled.count == 400'000);
  CHECK(pooled.std_error < std::min(ea.std_error, eb.std_error));
  CHECK(std::min(ea.value, eb.value) <= pooled.value);
  CHECK(pooled.value <= std::max(ea.value, eb.value));
  const auto single = det_oracle_mc(spec, both);
  const double se = std::hypot(pooled.std_error, single.std_error);
  CHECK(std::abs(pooled.value - single.value) < 3.0 * se);

  const auto other = det_oracle_mc({2.0, 1, 2.0}, a);
  CHECK_THROWS_AS(McEstimate::pooled(ea, other), DomainError);
}

TEST_CASE("Monte-Carlo runs are bit-reproducible") {
  McConfig mc;
  mc.samples = 50'000;
  mc.batch = 4096;
  const HankelSpec spec{1.0, 2, 0.7};
  const auto r1 = det_oracle_mc(spec, mc);
  const auto r2 = det_oracle_mc(spec, mc);
  CHECK(r1.value == r2.value);
  CHECK(r1.std_error == r2.std_error);
  mc.seed = 43;
  CHECK(det_oracle_mc(spec, mc).value != r1.value);
}

TEST_CASE("Monte-Carlo configuration") {
  McConfig mc;
  mc.samples = 100;
  CHECK_THROWS_AS(det_oracle_mc({2.0, 0, 1.0}, mc), DomainError);
  CHECK_THROWS_AS(det_oracle_mc({2.0, 5, 1.0}, mc), DomainError);
  McConfig bad;
  bad.samples = 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = {};
  bad.batch = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  // A handful of samples of a 5x5 determinant cannot pin it down.
  mc.samples = 20;
  const auto rough = det_oracle_mc({0.0, 4, 1.0}, mc);
  CHECK(rough.std_error > 0.0);
  CHECK(rough.variance_exploded == (rough.std_error > 0.5 * std::abs(rough.value)));
}

TEST_CASE("alternating differences") {
  const std::vector<double> grid{1.0, 1.5, 2.0, 2.5};
  const std::vector<double> zeros(4, 0.0);
  for (int m = 0; m <= 3; ++m) {
    const auto steps = probe_alternating_differences(grid, zeros, zeros, m);
    for (const auto& v : steps) {
      CHECK(v.holds);
      CHECK(v.margin == 0.0);
    }
  }

  std::vector<double> expo, errs(4, 0.0);
  for (double g : grid) expo.push_back(std::exp(-g));
  const auto ok = probe_alternating_differences(grid, expo, errs, 3);
  CHECK(ok.size() == 4 + 3 + 2 + 1);
  for (const auto& v : ok) CHECK(v.holds);

  std::vector<double> rising{1.0, 2.0, 3.0, 4.0};
  const auto bad = probe_alternating_differences(grid, rising, errs, 1);
  CHECK(!bad.back().holds);

  const std::vector<double> uneven{1.0, 1.5, 2.5, 3.0};
  CHECK_THROWS_AS(probe_alternating_differences(uneven, expo, errs, 1), DomainError);
  CHECK_THROWS_AS(probe_alternating_differences(grid, expo, errs, 4), DomainError);
  CHECK_THROWS_AS(probe_alternating_differences(grid, expo, errs, -1), DomainError);
  const std::vector<double> three{1.0, 1.5, 2.0};
  CHECK_THROWS_AS(probe_alternating_differences(three, expo, errs, 1), DomainError);
}

TEST_CASE("complete-monotonicity probe of the determinant") {
  std::vector<double> grid;
  for (int i = 0; i <= 18; ++i) grid.push_back(0.5 + 0.25 * i);
  const auto p = det_cm_probe(2.0, 1, grid, 2);
  CHECK(p.holds);
  CHECK(p.determinants.size() == grid.size());
  CHECK(p.steps.size() == 19 + 18 + 17);
  CHECK(p.steps.front().params.at("alpha") == 2.0);
  CHECK(p.steps.front().params.at("n") == 1.0);

  for (int n : {1, 2})
    for (double a : {-2.0, 0.0, 2.0}) {
      CAPTURE(n);
      CAPTURE(a);
      CHECK(det_cm_probe(a, n, grid, 2).holds);
    }

  const auto pos = det_cm_probe(1.0, 3, grid, 0);
  CHECK(pos.holds);
  CHECK(pos.steps.size() == grid.size());
  CHECK_THROWS_AS(det_cm_probe(2.0, 1, grid, 4), DomainError);
}

TEST_CASE("Hankel determinants are positive") {
  for (int n = 0; n <= 2; ++n)
    for (double a : {-2.0, 0.0, 2.0, 4.0})
      for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        CAPTURE(n);
        CAPTURE(a);
        CAPTURE(x);
        const auto d = det_ki({a, n, x});
        CHECK(d.value > d.abs_err_est);
        const auto minors = linalg::leading_minors(hankel_matrix({a, n, x}).values);
        for (double m : minors) CHECK(m > 0.0);
      }
}
