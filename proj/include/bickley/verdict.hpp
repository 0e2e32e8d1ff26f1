#ifndef BICKLEY_VERDICT_HPP
#define BICKLEY_VERDICT_HPP

#include <cmath>
#include <map>
#include <string>

#include "bickley/core.hpp"

namespace bickley {

inline constexpr double kDefaultVerdictTolerance = 1e-9;

/// A value carried together with a first-order bound on its absolute error.
/// Arithmetic propagates the bound linearly (interval accounting to first
/// order); constants enter with zero error.
struct Uncertain {
  double value = 0.0;
  double err = 0.0;

  Uncertain() = default;
  Uncertain(double v, double e = 0.0) : value(v), err(e) {}
  Uncertain(const KiValue& k) : value(k.value), err(k.abs_err_est) {}
};

inline Uncertain operator+(Uncertain a, Uncertain b) {
  return {a.value + b.value, a.err + b.err};
}
inline Uncertain operator-(Uncertain a, Uncertain b) {
  return {a.value - b.value, a.err + b.err};
}
inline Uncertain operator-(Uncertain a) { return {-a.value, a.err}; }
inline Uncertain operator*(Uncertain a, Uncertain b) {
  return {a.value * b.value, std::abs(a.value) * b.err + std::abs(b.value) * a.err};
}
inline Uncertain operator/(Uncertain a, Uncertain b) {
  const double q = a.value / b.value;
  return {q, (a.err + std::abs(q) * b.err) / std::abs(b.value)};
}
inline Uncertain sqrt(Uncertain a) {
  const double r = std::sqrt(a.value);
  return {r, r > 0.0 ? a.err / (2.0 * r) : a.err};
}
inline Uncertain abs(Uncertain a) { return {std::abs(a.value), a.err}; }
/// a^p for a > 0.
inline Uncertain pow(Uncertain a, double p) {
  const double v = std::pow(a.value, p);
  return {v, std::abs(p) * std::abs(v / a.value) * a.err};
}

/// One evaluated instance of an inequality lhs <= rhs.
///
/// margin = (rhs - lhs) / max(|lhs|, |rhs|, 1e-300), and err_budget is the
/// propagated absolute error of both sides in the same normalized units.
/// holds <=> margin >= -(tolerance + err_budget). Verdicts outside the
/// domain on which the inequality is claimed carry asserted = false and are
/// reported without counting as failures.
struct InequalityVerdict {
  std::string name;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double err_budget = 0.0;
  double tolerance = kDefaultVerdictTolerance;
  bool holds = true;
  bool asserted = true;

  /// margin + err_budget; the verdict holds iff slack >= -tolerance.
  double slack() const { return margin + err_budget; }
};

InequalityVerdict make_verdict(std::string name,
                               std::map<std::string, double> params,
                               Uncertain lhs, Uncertain rhs,
                               double tolerance = kDefaultVerdictTolerance,
                               bool asserted = true);

}  // namespace bickley

#endif  // BICKLEY_VERDICT_HPP
