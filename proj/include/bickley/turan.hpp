#ifndef BICKLEY_TURAN_HPP
#define BICKLEY_TURAN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "bickley/core.hpp"
#include "bickley/linalg.hpp"
#include "bickley/verdict.hpp"

namespace bickley {

inline constexpr int kMaxHankelOrder = 4;

/// (n+1)x(n+1) Hankel matrix M[j][k] = Ki_{alpha-j-k}(x).
struct HankelSpec {
  double alpha = 0.0;
  int n = 1;
  double x = 1.0;

  /// 0 <= n <= 4, x > 0 and finite, alpha finite.
  void validate() const;
};

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  std::uint64_t batch = 65'536;  // samples per independently seeded batch

  void validate() const;
};

/// Comparisons against a Monte-Carlo estimate are only asserted from this
/// sample count on.
inline constexpr std::uint64_t kMinAssertedSamples = 10'000;

struct HankelValues {
  linalg::Matrix values;
  linalg::Matrix errors;
};

HankelValues hankel_matrix(const HankelSpec& spec, const EvalConfig& cfg = {});

/// det M with a first-order error bound sum |cof_jk| dM_jk plus rounding.
KiValue det_ki(const HankelSpec& spec, const EvalConfig& cfg = {});

/// n = 1 determinant as the double integral
/// 1/2 int int exp(-x(ch t + ch s)) (ch t ch s)^-alpha (ch t - ch s)^2 dt ds
/// by a tensor tanh-sinh rule refined until two levels agree to rel_tol.
/// Throws ConvergenceError when the level limit is reached first.
KiValue det_oracle_2x2(double alpha, double x, const EvalConfig& cfg = {});

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  // Running statistics of the weight, kept so runs can be pooled.
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double normalizer = 0.0;  // K_0(x)^(n+1) / (n+1)!
  /// std_error > 0.5 * |value|.
  bool variance_exploded = false;

  KiValue as_ki() const { return {value, std_error}; }
  /// Combines two estimates of the same quantity drawn from independent
  /// streams. Throws DomainError when the normalizers differ.
  static McEstimate pooled(const McEstimate& a, const McEstimate& b);
};

/// Monte-Carlo estimate of
/// 1/(n+1)! int exp(-x sum ch t_j) prod_{j<k}(ch t_j - ch t_k)^2
///            prod (ch t_j)^-alpha dt,
/// each t_j drawn from the density exp(-x ch t)/K_0(x) by rejection from a
/// half-normal envelope. Bit-reproducible for fixed (samples, seed, batch).
/// Requires 1 <= n <= 4.
McEstimate det_oracle_mc(const HankelSpec& spec, const McConfig& mc,
                         const EvalConfig& cfg = {});

/// Verdicts (-1)^m Delta_h^m f(x_i) >= 0 for m = 0..order on an equally
/// spaced grid, scaled by the local magnitude sum C(m,k)|f(x_{i+k})|.
/// values and errs are f and its absolute error on the grid.
std::vector<InequalityVerdict> probe_alternating_differences(
    std::span<const double> grid, std::span<const double> values,
    std::span<const double> errs, int order,
    double tol = kDefaultVerdictTolerance);

struct CmProbe {
  double alpha = 0.0;
  int n = 0;
  int order = 0;
  std::vector<double> grid;
  std::vector<KiValue> determinants;
  std::vector<InequalityVerdict> steps;
  bool holds = true;
};

/// Finite-order complete-monotonicity probe of x -> det_ki(alpha, n, x).
/// order <= 3; the grid must be ascending with constant step.
CmProbe det_cm_probe(double alpha, int n, std::span<const double> grid,
                     int order, const EvalConfig& cfg = {},
                     double tol = kDefaultVerdictTolerance);

}  // namespace bickley

#endif  // BICKLEY_TURAN_HPP
