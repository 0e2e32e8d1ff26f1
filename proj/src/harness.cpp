#include "bickley/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>

#include "bickley/bounds.hpp"

namespace bickley {

namespace {

using Params = std::map<std::string, double>;

bool is_integer_at_least(double a, double lo) {
  return a >= lo && std::floor(a) == a;
}

std::uint64_t key_bits(double v) {
  // -0.0 and +0.0 name the same order.
  return std::bit_cast<std::uint64_t>(v == 0.0 ? 0.0 : v);
}

}  // namespace

// ---------------------------------------------------------------------------
// Evaluator

Evaluator::Evaluator(EvalConfig cfg, bool memoize)
    : cfg_(cfg), memoize_(memoize) {
  cfg_.validate();
}

std::size_t Evaluator::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = k.alpha_bits * 0x9E3779B97F4A7C15ULL;
  h ^= k.x_bits + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(k.m) + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

KiValue Evaluator::alpha_derivative(double alpha, double x, int m) const {
  if (!memoize_) return ki_alpha_derivative(alpha, x, m, cfg_);
  const Key key{key_bits(alpha), key_bits(x), m};
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const auto v = ki_alpha_derivative(alpha, x, m, cfg_);
  std::lock_guard lock(mutex_);
  cache_.emplace(key, v);
  return v;
}

KiValue Evaluator::ki(double alpha, double x) const {
  return alpha_derivative(alpha, x, 0);
}

std::size_t Evaluator::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

// ---------------------------------------------------------------------------
// Pointwise checks

InequalityVerdict check_turan(const Evaluator& ev, double alpha1, double alpha2,
                              double x, double tol) {
  const Uncertain mid = ev.ki(0.5 * (alpha1 + alpha2), x);
  const Uncertain a = ev.ki(alpha1, x);
  const Uncertain b = ev.ki(alpha2, x);
  return make_verdict("turan", {{"alpha1", alpha1}, {"alpha2", alpha2}, {"x", x}},
                      mid * mid, a * b, tol);
}

InequalityVerdict check_turan_x(const Evaluator& ev, double alpha, double x,
                                double tol) {
  const Uncertain k0 = ev.ki(alpha, x);
  const Uncertain k1 = ev.ki(alpha - 1.0, x);
  const Uncertain k2 = ev.ki(alpha - 2.0, x);
  return make_verdict("turan_x", {{"alpha", alpha}, {"x", x}}, k1 * k1, k2 * k0,
                      tol);
}

std::pair<InequalityVerdict, InequalityVerdict> check_turan_chain(
    const Evaluator& ev, double alpha, double x, double tol) {
  const Uncertain k0 = ev.ki(alpha, x);
  const Uncertain k1 = ev.ki(alpha - 1.0, x);
  const Uncertain k2 = ev.ki(alpha - 2.0, x);
  const Uncertain ratio = k0 * k2 / (k1 * k1);
  const Params params{{"alpha", alpha}, {"x", x}};
  return {make_verdict("turan_chain_lower", params, Uncertain(1.0), ratio, tol),
          make_verdict("turan_chain_upper", params, ratio,
                       Uncertain(1.0) + k0 / (Uncertain(x) * k1), tol,
                       is_integer_at_least(alpha, -1.0))};
}

std::pair<InequalityVerdict, InequalityVerdict> check_geometric_concavity_chain(
    const Evaluator& ev, double alpha, double x, double y, double tol) {
  const Uncertain at_geo = ev.ki(alpha, std::sqrt(x * y));
  const Uncertain kx = ev.ki(alpha, x);
  const Uncertain ky = ev.ki(alpha, y);
  const Uncertain at_arith = ev.ki(alpha, 0.5 * (x + y));
  const Uncertain geo_mean = sqrt(kx * ky);
  const Params params{{"alpha", alpha}, {"x", x}, {"y", y}};
  return {make_verdict("geometric_concavity_left", params, geo_mean, at_geo, tol,
                       is_integer_at_least(alpha, -1.0)),
          make_verdict("geometric_concavity_right", params, at_arith, geo_mean, tol)};
}

InequalityVerdict check_chebyshev(const Evaluator& ev, double alpha, double beta,
                                  double x, double tol) {
  const double sum = alpha + beta;
  double direction;
  if (beta == 0.0 || sum == 0.0) {
    direction = 0.0;
  } else if ((beta > 0.0) != (sum > 0.0)) {
    direction = 1.0;  // (cosh t)^beta and (cosh t)^-(alpha+beta) co-monotone
  } else {
    direction = -1.0;
  }
  const Uncertain mixed = Uncertain(ev.ki(-beta, x)) * Uncertain(ev.ki(sum, x));
  const Uncertain plain = Uncertain(ev.ki(0.0, x)) * Uncertain(ev.ki(alpha, x));
  const Params params{{"alpha", alpha}, {"beta", beta}, {"x", x}, {"direction", direction}};
  if (direction < 0.0) return make_verdict("chebyshev", params, plain, mixed, tol);
  return make_verdict("chebyshev", params, mixed, plain, tol);
}

InequalityVerdict check_gruss(const Evaluator& ev, double alpha, double beta,
                              double x, double tol) {
  if (!(beta <= 0.0) || !(alpha + beta >= 0.0)) {
    throw DomainError("Gruss bound requires alpha + beta >= 0 >= beta");
  }
  const Uncertain k0 = ev.ki(0.0, x);
  const Uncertain diff = k0 * Uncertain(ev.ki(alpha, x)) -
                         Uncertain(ev.ki(-beta, x)) * Uncertain(ev.ki(alpha + beta, x));
  return make_verdict("gruss", {{"alpha", alpha}, {"beta", beta}, {"x", x}},
                      abs(diff), k0 * k0 * Uncertain(0.25), tol);
}

std::array<InequalityVerdict, 3> check_kimberling_chain(const Evaluator& ev,
                                                        double alpha, double x,
                                                        double y, double tol) {
  if (!(alpha > 0.0)) throw DomainError("Kimberling chain requires alpha > 0");
  const Uncertain c = kimberling_constant(alpha);
  const Uncertain at_zero = ki_at_zero(alpha);
  const Uncertain kx = ev.ki(alpha, x);
  const Uncertain ky = ev.ki(alpha, y);
  const Uncertain kxy = ev.ki(alpha, x + y);
  const Params params{{"alpha", alpha}, {"x", x}, {"y", y}};
  return {make_verdict("kimberling_product", params, c * kx * ky, kxy, tol),
          make_verdict("kimberling_subadditive", params, kxy, kx + ky, tol),
          make_verdict("kimberling_petrovic", params, kx + ky, kxy + at_zero, tol)};
}

InequalityVerdict check_vasic(const Evaluator& ev, double alpha, double x,
                              double y, double r, double s, double tol) {
  if (!(alpha > 0.0)) throw DomainError("Vasic bound requires alpha > 0");
  if (!(r >= 1.0) || !(s >= 1.0)) throw DomainError("Vasic weights must be >= 1");
  const Uncertain lhs = Uncertain(r) * Uncertain(ev.ki(alpha, x)) +
                        Uncertain(s) * Uncertain(ev.ki(alpha, y));
  const Uncertain rhs = Uncertain(ev.ki(alpha, r * x + s * y)) +
                        Uncertain((r + s - 1.0) * ki_at_zero(alpha));
  return make_verdict("vasic",
                      {{"alpha", alpha}, {"x", x}, {"y", y}, {"r", r}, {"s", s}},
                      lhs, rhs, tol);
}

std::array<InequalityVerdict, 3> check_order_chain(const Evaluator& ev,
                                                   double alpha, double beta,
                                                   double x, double tol) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw DomainError("order chain requires alpha, beta > 0");
  }
  const Uncertain k0 = ev.ki(0.0, x);
  const Uncertain ka = ev.ki(alpha, x);
  const Uncertain kb = ev.ki(beta, x);
  const Uncertain kab = ev.ki(alpha + beta, x);
  const Params params{{"alpha", alpha}, {"beta", beta}, {"x", x}};
  return {make_verdict("order_product", params, ka * kb / k0, kab, tol),
          make_verdict("order_subadditive", params, kab, ka + kb, tol),
          make_verdict("order_petrovic", params, ka + kb, k0 + kab, tol)};
}

InequalityVerdict check_pair_mean(const Evaluator& ev, double alpha, double beta,
                                  double x, double tol) {
  const Uncertain k = ev.ki(alpha, x);
  return make_verdict("pair_mean", {{"alpha", alpha}, {"beta", beta}, {"x", x}},
                      Uncertain(2.0) * k,
                      Uncertain(ev.ki(alpha + beta, x)) + Uncertain(ev.ki(alpha - beta, x)),
                      tol);
}

InequalityVerdict check_pair_product(const Evaluator& ev, double alpha, double nu,
                                     double mu, double x, double tol) {
  const Uncertain k = ev.ki(alpha, x);
  const Uncertain first = Uncertain(ev.ki(alpha + nu, x)) * Uncertain(ev.ki(alpha - mu, x));
  const Uncertain second = Uncertain(ev.ki(alpha - nu, x)) * Uncertain(ev.ki(alpha + mu, x));
  return make_verdict("pair_product",
                      {{"alpha", alpha}, {"nu", nu}, {"mu", mu}, {"x", x}},
                      Uncertain(2.0) * k * k, first + second, tol);
}

InequalityVerdict check_joint_log_convexity(const Evaluator& ev, double alpha,
                                            double x, double nu, double mu,
                                            double tol) {
  if (!(std::abs(nu) < 1.0)) {
    throw DomainError("joint log-convexity check requires |nu| < 1");
  }
  const Uncertain k = ev.ki(alpha, x);
  const Uncertain rhs = Uncertain(ev.ki(alpha * (1.0 + mu), (1.0 + nu) * x)) *
                        Uncertain(ev.ki(alpha * (1.0 - mu), (1.0 - nu) * x));
  return make_verdict("joint_log_convexity",
                      {{"alpha", alpha}, {"x", x}, {"nu", nu}, {"mu", mu}}, k * k,
                      rhs, tol);
}

InequalityVerdict check_relative_convexity(const Evaluator& ev, double alpha,
                                           double x, double tol) {
  if (!(alpha >= 2.0)) throw DomainError("relative convexity requires alpha >= 2");
  const Uncertain lhs = Uncertain(ev.ki(alpha - 2.0, x)) / Uncertain(ev.ki(alpha - 1.0, x));
  const Uncertain rhs = Uncertain(ev.ki(0.0, x)) / Uncertain(ev.ki(1.0, x));
  return make_verdict("relative_convexity", {{"alpha", alpha}, {"x", x}}, lhs, rhs,
                      tol);
}

InequalityVerdict check_log_convexity_alpha(const Evaluator& ev, double alpha1,
                                            double alpha2, double lambda, double x,
                                            double tol) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  const Uncertain mid = ev.ki(lambda * alpha1 + (1.0 - lambda) * alpha2, x);
  const Uncertain rhs = pow(Uncertain(ev.ki(alpha1, x)), lambda) *
                        pow(Uncertain(ev.ki(alpha2, x)), 1.0 - lambda);
  return make_verdict("log_convexity_alpha",
                      {{"alpha1", alpha1}, {"alpha2", alpha2}, {"lambda", lambda}, {"x", x}},
                      mid, rhs, tol);
}

InequalityVerdict check_log_convexity_x(const Evaluator& ev, double alpha,
                                        double x1, double x2, double lambda,
                                        double tol) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  const Uncertain mid = ev.ki(alpha, lambda * x1 + (1.0 - lambda) * x2);
  const Uncertain rhs = pow(Uncertain(ev.ki(alpha, x1)), lambda) *
                        pow(Uncertain(ev.ki(alpha, x2)), 1.0 - lambda);
  return make_verdict("log_convexity_x",
                      {{"alpha", alpha}, {"x1", x1}, {"x2", x2}, {"lambda", lambda}},
                      mid, rhs, tol);
}

InequalityVerdict check_cm_x(const Evaluator& ev, double alpha, double x, int m,
                             double tol) {
  // (-1)^m Ki_alpha^(m) = Ki_{alpha-m}.
  return make_verdict("cm_x",
                      {{"alpha", alpha}, {"x", x}, {"m", static_cast<double>(m)}},
                      Uncertain(0.0), ev.ki(alpha - m, x), tol);
}

InequalityVerdict check_cm_alpha(const Evaluator& ev, double alpha, double x,
                                 int m, double tol) {
  auto d = ev.alpha_derivative(alpha, x, m);
  if (m % 2 != 0) d.value = -d.value;
  return make_verdict("cm_alpha",
                      {{"alpha", alpha}, {"x", x}, {"m", static_cast<double>(m)}},
                      Uncertain(0.0), d, tol);
}

InequalityVerdict check_bound_agm(const Evaluator& ev, double alpha, double x,
                                  double tol) {
  return make_verdict("bound_agm", {{"alpha", alpha}, {"x", x}}, ev.ki(alpha, x),
                      upper_bound_agm(alpha, x), tol);
}

InequalityVerdict check_bound_power(const Evaluator& ev, double alpha, double x,
                                    double tol) {
  return make_verdict("bound_power", {{"alpha", alpha}, {"x", x}}, ev.ki(alpha, x),
                      upper_bound_power(alpha, x), tol);
}

InequalityVerdict check_bound_carlson(const Evaluator& ev, double alpha, double x,
                                      double tol) {
  const Uncertain k = ev.ki(alpha, x);
  const Uncertain bound = Uncertain(0.5 * std::numbers::pi * std::numbers::pi) *
                          Uncertain(ev.ki(2.0 * alpha, 2.0 * x)) *
                          Uncertain(ev.ki(2.0 * alpha - 2.0, 2.0 * x));
  return make_verdict("bound_carlson", {{"alpha", alpha}, {"x", x}}, pow(k, 4.0), bound,
                      tol);
}

std::pair<InequalityVerdict, InequalityVerdict> check_bound_partial_alpha(
    const Evaluator& ev, double alpha, double x, double tol) {
  const Uncertain half(0.5);
  const Uncertain deriv = ev.alpha_derivative(alpha, x, 1);
  const Uncertain lower =
      half * (Uncertain(ev.ki(alpha + 1.0, x)) - Uncertain(ev.ki(alpha - 1.0, x)));
  const Uncertain upper =
      half * (Uncertain(ev.ki(alpha + 2.0, x)) - Uncertain(ev.ki(alpha, x)));
  const Params params{{"alpha", alpha}, {"x", x}};
  return {make_verdict("bound_partial_alpha_lower", params, lower, deriv, tol),
          make_verdict("bound_partial_alpha_upper", params, deriv, upper, tol)};
}

std::array<InequalityVerdict, 3> check_bound_bilateral(const Evaluator& ev,
                                                       double alpha, double x,
                                                       double p, double tol) {
  const auto bracket = bilateral_bracket(alpha, x, p);
  const double q = p / (p - 1.0);
  const Uncertain k0 = ev.ki(0.0, x * p);
  const Uncertain mixed =
      pow(k0, 1.0 / p) * Uncertain(std::pow(ki_at_zero(alpha * q), 1.0 / q));
  const Uncertain k = ev.ki(alpha, x);
  const Params params{{"alpha", alpha}, {"x", x}, {"p", p}};
  return {make_verdict("bound_bilateral_lower", params, bracket.lower, k, tol),
          make_verdict("bound_bilateral_mixed", params, k, mixed, tol),
          make_verdict("bound_bilateral_upper", params, mixed, bracket.upper, tol)};
}

// ---------------------------------------------------------------------------
// Gram matrices

namespace {

GramVerdict finish_gram(linalg::Matrix h, double tol) {
  GramVerdict g;
  const auto eig = linalg::symmetric_eigenvalues(h);
  g.eigenvalues = eig.values;
  g.converged = eig.converged;
  g.lambda_min = eig.values.empty() ? 0.0 : eig.values.front();
  g.trace = h.trace();
  g.leading_minors = linalg::leading_minors(h);
  g.tolerance = tol;
  g.holds = g.converged && g.lambda_min >= -tol * g.trace;
  g.matrix = std::move(h);
  return g;
}

void require_gram_size(std::size_t n) {
  if (n == 0) throw DomainError("Gram test needs at least one point");
  if (n > kMaxGramSize) throw DomainError("Gram test supports at most 8 points");
}

}  // namespace

GramVerdict gram_psd_in_x(const Evaluator& ev, double alpha,
                          std::span<const double> points, double tol) {
  if (!(alpha > 0.0)) throw DomainError("x-mode exponential convexity requires alpha > 0");
  require_gram_size(points.size());
  const std::size_t n = points.size();
  linalg::Matrix h(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      h(j, k) = ev.ki(alpha, points[j] + points[k]).value;
      h(k, j) = h(j, k);
    }
  return finish_gram(std::move(h), tol);
}

GramVerdict gram_psd_in_alpha(const Evaluator& ev, double x,
                              std::span<const double> alphas, double tol) {
  require_gram_size(alphas.size());
  const std::size_t n = alphas.size();
  linalg::Matrix h(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      h(j, k) = ev.ki(alphas[j] + alphas[k], x).value;
      h(k, j) = h(j, k);
    }
  return finish_gram(std::move(h), tol);
}

// ---------------------------------------------------------------------------
// Probes

namespace {

void require_sorted(std::span<const double> grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw DomainError("probe grid must be sorted ascending");
  }
}

}  // namespace

MonotoneProbe probe_log_convexity_x(const Evaluator& ev, double alpha,
                                    std::span<const double> grid, double tol) {
  require_sorted(grid);
  MonotoneProbe probe;
  probe.name = "log_convexity_probe";
  probe.alpha = alpha;
  probe.grid.assign(grid.begin(), grid.end());
  std::vector<Uncertain> r;
  for (double x : grid) {
    r.push_back(-(Uncertain(ev.ki(alpha - 1.0, x)) / Uncertain(ev.ki(alpha, x))));
    probe.samples.push_back(r.back().value);
  }
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    probe.steps.push_back(make_verdict(
        probe.name, {{"alpha", alpha}, {"x_lo", grid[i]}, {"x_hi", grid[i + 1]}},
        r[i], r[i + 1], tol));
    probe.holds = probe.holds && probe.steps.back().holds;
  }
  return probe;
}

MonotoneProbe probe_geometric_concavity_x(const Evaluator& ev, double alpha,
                                          std::span<const double> grid,
                                          double tol) {
  require_sorted(grid);
  MonotoneProbe probe;
  probe.name = "geometric_concavity_probe";
  probe.alpha = alpha;
  probe.asserted = is_integer_at_least(alpha, -1.0);
  probe.grid.assign(grid.begin(), grid.end());
  std::vector<Uncertain> s;
  for (double x : grid) {
    s.push_back(-(Uncertain(x) * Uncertain(ev.ki(alpha - 1.0, x)) /
                  Uncertain(ev.ki(alpha, x))));
    probe.samples.push_back(s.back().value);
  }
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    probe.steps.push_back(make_verdict(
        probe.name, {{"alpha", alpha}, {"x_lo", grid[i]}, {"x_hi", grid[i + 1]}},
        s[i + 1], s[i], tol, probe.asserted));
    probe.holds = probe.holds && probe.steps.back().holds;
  }
  return probe;
}

// ---------------------------------------------------------------------------
// Grids

std::vector<double> log_spaced(double a, double b, std::size_t n) {
  if (n == 0) return {};
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("log-spaced range needs positive ends");
  if (n == 1) return {a};
  std::vector<double> out(n);
  const double la = std::log(a);
  const double step = (std::log(b) - la) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(la + step * static_cast<double>(i));
  out.front() = a;
  out.back() = b;
  return out;
}

GridSpec GridSpec::tiny() {
  GridSpec g;
  g.alpha_values = {-1.0, 0.0, 0.5, 1.0, 2.0};
  g.x_values = {0.5, 1.0, 2.0};
  g.beta_values = {-1.0, 0.0, 1.0};
  g.y_values = {1.0};
  g.lambda_values = {0.5};
  g.nu_values = {0.0, 0.5};
  g.mu_values = {0.0, 0.5};
  g.p_values = {2.0};
  g.r_values = {1.0, 2.0};
  g.s_values = {1.0};
  return g;
}

GridSpec GridSpec::default_grid() {
  GridSpec g;
  g.alpha_values = {-5.0, -4.0, -3.0, -2.0, -1.5, -1.0, -0.5, 0.0,
                    0.5,  1.0,  1.5,  2.0,  2.5,  3.0,  4.0,  5.0};
  g.x_values = log_spaced(0.05, 20.0, 13);
  g.beta_values = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  g.y_values = {0.1, 1.0, 5.0};
  g.lambda_values = {0.25, 0.5, 0.75};
  g.nu_values = {-0.75, -0.25, 0.0, 0.5, 1.5};
  g.mu_values = {-1.0, 0.0, 0.5, 2.0};
  g.p_values = {1.5, 2.0, 4.0};
  g.r_values = {1.0, 2.0, 3.5};
  g.s_values = {1.0, 1.5, 3.0};
  return g;
}

GridSpec GridSpec::dense() {
  GridSpec g = default_grid();
  g.alpha_values.clear();
  for (int i = -20; i <= 20; ++i) g.alpha_values.push_back(0.25 * i);
  g.x_values = log_spaced(0.02, 30.0, 25);
  g.beta_values = {-3.0, -2.0, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0, 3.0};
  g.y_values = {0.05, 0.3, 1.0, 3.0, 8.0};
  g.lambda_values = {0.1, 0.25, 0.5, 0.75, 0.9};
  return g;
}

GridSpec GridSpec::named(const std::string& name) {
  if (name == "tiny") return tiny();
  if (name == "default") return default_grid();
  if (name == "dense") return dense();
  throw DomainError("unknown grid '" + name + "' (expected tiny, default or dense)");
}

void GridSpec::validate() const {
  if (alpha_values.empty() || x_values.empty()) {
    throw DomainError("grid needs at least one alpha and one x value");
  }
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
  };
  for (const auto* list : {&alpha_values, &x_values, &beta_values, &y_values,
                           &lambda_values, &nu_values, &mu_values, &p_values,
                           &r_values, &s_values}) {
    if (!finite(*list)) throw DomainError("grid values must be finite");
  }
  for (double x : x_values) {
    if (x < 1e-6 || x > 700.0) throw DomainError("grid x values must lie in [1e-6, 700]");
  }
  for (double y : y_values) {
    if (y < 1e-6 || y > 700.0) throw DomainError("grid y values must lie in [1e-6, 700]");
  }
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

using Sink = std::vector<InequalityVerdict>;
using Runner = std::function<void(const Evaluator&, const GridSpec&, double, Sink&)>;

struct CheckEntry {
  std::string name;
  Runner run;
};

template <class Range>
void append(Sink& out, Range&& r) {
  for (auto& v : r) out.push_back(std::move(v));
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

const std::vector<CheckEntry>& registry() {
  static const std::vector<CheckEntry> checks = {
      {"turan",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (std::size_t i = 0; i < g.alpha_values.size(); ++i)
           for (std::size_t j = i; j < g.alpha_values.size(); ++j)
             for (double x : g.x_values)
               out.push_back(check_turan(ev, g.alpha_values[i], g.alpha_values[j], x, tol));
       }},
      {"turan_x",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double x : g.x_values) out.push_back(check_turan_x(ev, a, x, tol));
       }},
      {"turan_chain",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double x : g.x_values) {
             auto [lo, hi] = check_turan_chain(ev, a, x, tol);
             out.push_back(std::move(lo));
             out.push_back(std::move(hi));
           }
       }},
      {"geometric_concavity",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double x : g.x_values)
             for (double y : g.y_values) {
               auto [l, r] = check_geometric_concavity_chain(ev, a, x, y, tol);
               out.push_back(std::move(l));
               out.push_back(std::move(r));
             }
       }},
      {"chebyshev",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double b : g.beta_values)
             for (double x : g.x_values) out.push_back(check_chebyshev(ev, a, b, x, tol));
       }},
      {"relative_convexity",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values) {
           if (a < 2.0) continue;
           for (double x : g.x_values) out.push_back(check_relative_convexity(ev, a, x, tol));
         }
       }},
      {"gruss",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double b : g.beta_values) {
             if (b > 0.0 || a + b < 0.0) continue;
             for (double x : g.x_values) out.push_back(check_gruss(ev, a, b, x, tol));
           }
       }},
      {"kimberling",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values) {
           if (a <= 0.0) continue;
           for (double x : g.x_values)
             for (double y : g.y_values) append(out, check_kimberling_chain(ev, a, x, y, tol));
         }
       }},
      {"vasic",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values) {
           if (a <= 0.0) continue;
           for (double x : g.x_values)
             for (double y : g.y_values)
               for (double r : g.r_values)
                 for (double s : g.s_values) {
                   if (r < 1.0 || s < 1.0) continue;
                   out.push_back(check_vasic(ev, a, x, y, r, s, tol));
                 }
         }
       }},
      {"order_chain",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values) {
           if (a <= 0.0) continue;
           for (double b : g.beta_values) {
             if (b <= 0.0) continue;
             for (double x : g.x_values) append(out, check_order_chain(ev, a, b, x, tol));
           }
         }
       }},
      {"pair_mean",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double b : g.beta_values)
             for (double x : g.x_values) out.push_back(check_pair_mean(ev, a, b, x, tol));
       }},
      {"pair_product",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double nu : g.nu_values)
             for (double mu : g.mu_values)
               for (double x : g.x_values)
                 out.push_back(check_pair_product(ev, a, nu, mu, x, tol));
       }},
      {"joint_log_convexity",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double x : g.x_values)
             for (double nu : g.nu_values) {
               if (std::abs(nu) >= 1.0) continue;
               for (double mu : g.mu_values)
                 out.push_back(check_joint_log_convexity(ev, a, x, nu, mu, tol));
             }
       }},
      {"log_convexity_alpha",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (std::size_t i = 0; i < g.alpha_values.size(); ++i)
           for (std::size_t j = i + 1; j < g.alpha_values.size(); ++j)
             for (double l : g.lambda_values)
               for (double x : g.x_values)
                 out.push_back(check_log_convexity_alpha(ev, g.alpha_values[i],
                                                         g.alpha_values[j], l, x, tol));
       }},
      {"log_convexity_x",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (std::size_t i = 0; i < g.x_values.size(); ++i)
             for (std::size_t j = i + 1; j < g.x_values.size(); ++j)
               for (double l : g.lambda_values)
                 out.push_back(check_log_convexity_x(ev, a, g.x_values[i], g.x_values[j], l, tol));
       }},
      {"cm_x",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double x : g.x_values)
             for (int m = 0; m <= 6; ++m) out.push_back(check_cm_x(ev, a, x, m, tol));
       }},
      {"cm_alpha",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double x : g.x_values)
             for (int m = 0; m <= 3; ++m) out.push_back(check_cm_alpha(ev, a, x, m, tol));
       }},
      {"log_convexity_probe",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         const auto xs = sorted_unique(g.x_values);
         for (double a : g.alpha_values) append(out, probe_log_convexity_x(ev, a, xs, tol).steps);
       }},
      {"geometric_concavity_probe",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         const auto xs = sorted_unique(g.x_values);
         for (double a : g.alpha_values)
           append(out, probe_geometric_concavity_x(ev, a, xs, tol).steps);
       }},
      {"order_ratio_probe",
       // alpha -> Ki_alpha(x)/alpha decreasing on alpha > 0. Report-only:
       // asserted through the sub-additivity verdicts instead.
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         std::vector<double> as;
         for (double a : sorted_unique(g.alpha_values))
           if (a > 0.0) as.push_back(a);
         for (double x : g.x_values)
           for (std::size_t i = 0; i + 1 < as.size(); ++i) {
             const Uncertain lo = Uncertain(ev.ki(as[i], x)) / Uncertain(as[i]);
             const Uncertain hi = Uncertain(ev.ki(as[i + 1], x)) / Uncertain(as[i + 1]);
             out.push_back(make_verdict("order_ratio_probe",
                                        {{"alpha_lo", as[i]}, {"alpha_hi", as[i + 1]}, {"x", x}},
                                        hi, lo, tol, false));
           }
       }},
      {"bound_agm",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values) {
           if (a <= 0.25) continue;
           for (double x : g.x_values) out.push_back(check_bound_agm(ev, a, x, tol));
         }
       }},
      {"bound_partial_alpha",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double x : g.x_values) {
             auto [lo, hi] = check_bound_partial_alpha(ev, a, x, tol);
             out.push_back(std::move(lo));
             out.push_back(std::move(hi));
           }
       }},
      {"bound_carlson",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values)
           for (double x : g.x_values) out.push_back(check_bound_carlson(ev, a, x, tol));
       }},
      {"bound_power",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values) {
           if (a <= 0.0) continue;
           for (double x : g.x_values) out.push_back(check_bound_power(ev, a, x, tol));
         }
       }},
      {"bound_bilateral",
       [](const Evaluator& ev, const GridSpec& g, double tol, Sink& out) {
         for (double a : g.alpha_values) {
           if (a <= 0.0) continue;
           for (double x : g.x_values)
             for (double p : g.p_values) {
               if (p <= 1.0) continue;
               append(out, check_bound_bilateral(ev, a, x, p, tol));
             }
         }
       }},
  };
  return checks;
}

SweepEntry summarize(const std::string& name, Sink& verdicts) {
  SweepEntry e;
  e.name = name;
  double min_margin = std::numeric_limits<double>::infinity();
  double min_slack = std::numeric_limits<double>::infinity();
  double ro_min = std::numeric_limits<double>::infinity();
  for (auto& v : verdicts) {
    if (!v.asserted) {
      ++e.report_only_count;
      ro_min = std::min(ro_min, v.margin);
      if (!v.holds) ++e.report_only_violations;
      continue;
    }
    ++e.count;
    if (v.margin < min_margin) {
      min_margin = v.margin;
      e.argmin = v.params;
      e.argmin_verdict = v.name;
    }
    min_slack = std::min(min_slack, v.slack());
    if (!v.holds) e.failures.push_back(std::move(v));
  }
  e.min_margin = e.count > 0 ? min_margin : 0.0;
  e.min_slack = e.count > 0 ? min_slack : 0.0;
  e.report_only_min_margin = e.report_only_count > 0 ? ro_min : 0.0;
  return e;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : registry()) out.push_back(c.name);
    return out;
  }();
  return names;
}

std::size_t SweepReport::total_failures() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.failures.size();
  return n;
}

SweepReport sweep(const Evaluator& ev, const GridSpec& grid,
                  const std::vector<std::string>& names, double tol) {
  grid.validate();
  const auto& reg = registry();

  std::set<std::string> wanted;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& c : reg) wanted.insert(c.name);
      continue;
    }
    const bool known = std::any_of(reg.begin(), reg.end(),
                                   [&](const CheckEntry& c) { return c.name == n; });
    if (!known) throw DomainError("unknown check '" + n + "'");
    wanted.insert(n);
  }

  SweepReport report;
  report.tolerance = tol;
  for (const auto& c : reg) {
    if (!wanted.contains(c.name)) continue;
    Sink verdicts;
    c.run(ev, grid, tol, verdicts);
    report.entries.push_back(summarize(c.name, verdicts));
  }
  return report;
}

}  // namespace bickley
