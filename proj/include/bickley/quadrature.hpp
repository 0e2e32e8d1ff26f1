#ifndef BICKLEY_QUADRATURE_HPP
#define BICKLEY_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace bickley::quad {

struct TanhSinhOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;  // on the integral as seen by the caller
  int max_levels = 12;
  int min_levels = 4;
};

struct TanhSinhResult {
  double value = 0.0;
  double level_diff = 0.0;  // |I_k - I_{k-1}| at the last level
  int levels = 0;
  bool converged = false;
};

/// One tanh-sinh node on [-1, 1]: abscissa stored as its distance to the
/// nearer endpoint so that nodes close to +-1 keep full relative precision.
struct TanhSinhNode {
  double complement;  // 1 - |x(u)|
  double weight;      // dx/du
};

/// Node u = j*h, j >= 0. Abscissa tanh(pi/2 sinh u), weight
/// (pi/2) cosh u / cosh^2(pi/2 sinh u).
inline TanhSinhNode tanh_sinh_node(double u) {
  constexpr double half_pi = std::numbers::pi / 2;
  const double s = half_pi * std::sinh(u);
  const double e = std::exp(-2.0 * s);
  const double denom = 1.0 + e;
  return {2.0 * e / denom, half_pi * std::cosh(u) * 4.0 * e / (denom * denom)};
}

/// Nodes of a fixed level on [a, b] in the order they are summed, with
/// weights already scaled by the half-width and step. Used by the tensor
/// product oracle, which needs the node set rather than just the sum.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline Rule tanh_sinh_rule(double a, double b, int level, double u_max = 6.0) {
  const double half = 0.5 * (b - a);
  const double h = std::ldexp(1.0, -level);
  Rule rule;
  const double mid = a + half;
  const auto center = tanh_sinh_node(0.0);
  rule.nodes.push_back(mid);
  rule.weights.push_back(half * h * center.weight);
  for (long j = 1;; ++j) {
    const double u = static_cast<double>(j) * h;
    if (u > u_max) break;
    const auto node = tanh_sinh_node(u);
    if (node.weight < 1e-300) break;
    const double w = half * h * node.weight;
    rule.nodes.push_back(a + half * node.complement);
    rule.weights.push_back(w);
    rule.nodes.push_back(b - half * node.complement);
    rule.weights.push_back(w);
  }
  return rule;
}

/// Tanh-sinh (double-exponential) quadrature of f on the finite interval
/// [a, b]. The step halves each level and only the new odd nodes are
/// evaluated. Stops once two successive levels agree within
/// max(abs_tol, rel_tol*|I|), but never before min_levels.
///
/// f must be finite at every interior point; it is never evaluated exactly
/// at an endpoint unless the node complement underflows.
template <class F>
TanhSinhResult tanh_sinh(F&& f, double a, double b,
                         const TanhSinhOptions& opts) {
  const double half = 0.5 * (b - a);
  const double mid = a + half;
  constexpr double u_max = 6.0;
  constexpr double negligible = 1e-20;

  auto side_sum = [&](double h, long start, long stride) {
    double acc = 0.0;
    for (long j = start;; j += stride) {
      const double u = static_cast<double>(j) * h;
      if (u > u_max) break;
      const auto node = tanh_sinh_node(u);
      if (node.weight < 1e-300) break;
      const double off = half * node.complement;
      const double term = node.weight * (f(a + off) + f(b - off));
      acc += term;
      if (u > 2.0 && std::abs(term) <= negligible * std::abs(acc)) break;
    }
    return acc;
  };

  TanhSinhResult res;
  double h = 1.0;
  double sum = tanh_sinh_node(0.0).weight * f(mid) + side_sum(h, 1, 1);
  double estimate = half * h * sum;

  for (int level = 1; level <= opts.max_levels; ++level) {
    h *= 0.5;
    sum += side_sum(h, 1, 2);
    const double next = half * h * sum;
    res.level_diff = std::abs(next - estimate);
    res.levels = level;
    estimate = next;
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(next));
    if (level >= opts.min_levels && res.level_diff <= target) {
      res.converged = true;
      break;
    }
  }
  res.value = estimate;
  return res;
}

}  // namespace bickley::quad

#endif  // BICKLEY_QUADRATURE_HPP
