#ifndef BICKLEY_HARNESS_HPP
#define BICKLEY_HARNESS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bickley/core.hpp"
#include "bickley/linalg.hpp"
#include "bickley/verdict.hpp"

namespace bickley {

/// Source of Ki values for the checks. With memoize = true every distinct
/// (alpha, x, m) is evaluated once; the cache is guarded by a mutex so an
/// Evaluator may be shared between threads.
class Evaluator {
 public:
  explicit Evaluator(EvalConfig cfg = {}, bool memoize = true);

  KiValue ki(double alpha, double x) const;
  KiValue alpha_derivative(double alpha, double x, int m) const;

  const EvalConfig& config() const { return cfg_; }
  std::size_t cache_size() const;

 private:
  struct Key {
    std::uint64_t alpha_bits;
    std::uint64_t x_bits;
    int m;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  EvalConfig cfg_;
  bool memoize_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Key, KiValue, KeyHash> cache_;
};

// ---------------------------------------------------------------------------
// Pointwise checks. Each returns verdicts oriented as lhs <= rhs.

/// [Ki_{(a1+a2)/2}]^2 <= Ki_{a1} Ki_{a2}.
InequalityVerdict check_turan(const Evaluator& ev, double alpha1, double alpha2,
                              double x, double tol = kDefaultVerdictTolerance);

/// [Ki_{alpha-1}]^2 <= Ki_{alpha-2} Ki_alpha, the numerator of (Ki'/Ki)'.
InequalityVerdict check_turan_x(const Evaluator& ev, double alpha, double x,
                                double tol = kDefaultVerdictTolerance);

/// 1 <= Ki_a Ki_{a-2}/Ki_{a-1}^2 (all real alpha) and
/// Ki_a Ki_{a-2}/Ki_{a-1}^2 <= 1 + Ki_a/(x Ki_{a-1}) (asserted for
/// alpha in {-1, 0, 1, ...} only).
std::pair<InequalityVerdict, InequalityVerdict> check_turan_chain(
    const Evaluator& ev, double alpha, double x,
    double tol = kDefaultVerdictTolerance);

/// Ki(sqrt(xy)) >= sqrt(Ki(x) Ki(y)) (asserted for alpha in {-1, 0, 1, ...})
/// and sqrt(Ki(x) Ki(y)) >= Ki((x+y)/2) (all alpha).
std::pair<InequalityVerdict, InequalityVerdict> check_geometric_concavity_chain(
    const Evaluator& ev, double alpha, double x, double y,
    double tol = kDefaultVerdictTolerance);

/// Chebyshev ordering of Ki_{-beta} Ki_{alpha+beta} against Ki_0 Ki_alpha.
/// The asserted direction follows the monotonicity of (cosh t)^beta and
/// (cosh t)^-(alpha+beta): forward (<=) when they are co-monotone, reversed
/// otherwise. params["direction"] is +1, -1, or 0 (degenerate equality).
InequalityVerdict check_chebyshev(const Evaluator& ev, double alpha, double beta,
                                  double x, double tol = kDefaultVerdictTolerance);

/// |Ki_0 Ki_alpha - Ki_{-beta} Ki_{alpha+beta}| <= Ki_0^2 / 4 for
/// alpha + beta >= 0 >= beta. Throws DomainError outside that set.
InequalityVerdict check_gruss(const Evaluator& ev, double alpha, double beta,
                              double x, double tol = kDefaultVerdictTolerance);

/// c Ki(x) Ki(y) <= Ki(x+y) <= Ki(x) + Ki(y) <= Ki(x+y) + Ki_alpha(0),
/// c = kimberling_constant(alpha), alpha > 0.
std::array<InequalityVerdict, 3> check_kimberling_chain(
    const Evaluator& ev, double alpha, double x, double y,
    double tol = kDefaultVerdictTolerance);

/// r Ki(x) + s Ki(y) <= Ki(rx + sy) + (r + s - 1) Ki_alpha(0), r, s >= 1.
InequalityVerdict check_vasic(const Evaluator& ev, double alpha, double x,
                              double y, double r, double s,
                              double tol = kDefaultVerdictTolerance);

/// Ki_a Ki_b / Ki_0 <= Ki_{a+b} <= Ki_a + Ki_b <= Ki_0 + Ki_{a+b}, a, b > 0.
std::array<InequalityVerdict, 3> check_order_chain(
    const Evaluator& ev, double alpha, double beta, double x,
    double tol = kDefaultVerdictTolerance);

/// 2 Ki_alpha <= Ki_{alpha+beta} + Ki_{alpha-beta}.
InequalityVerdict check_pair_mean(const Evaluator& ev, double alpha, double beta,
                                  double x, double tol = kDefaultVerdictTolerance);

/// 2 Ki_alpha^2 <= Ki_{a+nu} Ki_{a-mu} + Ki_{a-nu} Ki_{a+mu}.
InequalityVerdict check_pair_product(const Evaluator& ev, double alpha, double nu,
                                     double mu, double x,
                                     double tol = kDefaultVerdictTolerance);

/// [Ki_alpha(x)]^2 <= Ki_{alpha(1+mu)}((1+nu)x) Ki_{alpha(1-mu)}((1-nu)x),
/// |nu| < 1 (DomainError otherwise).
InequalityVerdict check_joint_log_convexity(const Evaluator& ev, double alpha,
                                            double x, double nu, double mu,
                                            double tol = kDefaultVerdictTolerance);

/// Ki_{alpha-2}/Ki_{alpha-1} <= Ki_0/Ki_1 for alpha >= 2.
InequalityVerdict check_relative_convexity(const Evaluator& ev, double alpha,
                                           double x,
                                           double tol = kDefaultVerdictTolerance);

/// Ki_{l a1 + (1-l) a2} <= Ki_{a1}^l Ki_{a2}^(1-l), l in [0, 1].
InequalityVerdict check_log_convexity_alpha(const Evaluator& ev, double alpha1,
                                            double alpha2, double lambda, double x,
                                            double tol = kDefaultVerdictTolerance);

/// Ki(l x1 + (1-l) x2) <= Ki(x1)^l Ki(x2)^(1-l), l in [0, 1].
InequalityVerdict check_log_convexity_x(const Evaluator& ev, double alpha,
                                        double x1, double x2, double lambda,
                                        double tol = kDefaultVerdictTolerance);

/// (-1)^m d^m/dx^m Ki_alpha(x) = Ki_{alpha-m}(x) > 0.
InequalityVerdict check_cm_x(const Evaluator& ev, double alpha, double x, int m,
                             double tol = kDefaultVerdictTolerance);

/// (-1)^m d^m/dalpha^m Ki_alpha(x) > 0.
InequalityVerdict check_cm_alpha(const Evaluator& ev, double alpha, double x,
                                 int m, double tol = kDefaultVerdictTolerance);

// Closed-form bounds as verdicts.

InequalityVerdict check_bound_agm(const Evaluator& ev, double alpha, double x,
                                  double tol = kDefaultVerdictTolerance);
InequalityVerdict check_bound_power(const Evaluator& ev, double alpha, double x,
                                    double tol = kDefaultVerdictTolerance);
InequalityVerdict check_bound_carlson(const Evaluator& ev, double alpha, double x,
                                      double tol = kDefaultVerdictTolerance);
/// lower < dKi/dalpha and dKi/dalpha < upper.
std::pair<InequalityVerdict, InequalityVerdict> check_bound_partial_alpha(
    const Evaluator& ev, double alpha, double x,
    double tol = kDefaultVerdictTolerance);
/// lower <= Ki, Ki <= mixed, mixed <= upper.
std::array<InequalityVerdict, 3> check_bound_bilateral(
    const Evaluator& ev, double alpha, double x, double p,
    double tol = kDefaultVerdictTolerance);

// ---------------------------------------------------------------------------
// Exponential convexity.

inline constexpr double kDefaultGramTolerance = 1e-10;
inline constexpr std::size_t kMaxGramSize = 8;

struct GramVerdict {
  linalg::Matrix matrix;
  std::vector<double> eigenvalues;
  std::vector<double> leading_minors;
  double lambda_min = 0.0;
  double trace = 0.0;
  double tolerance = kDefaultGramTolerance;
  bool converged = false;
  /// lambda_min >= -tolerance * trace and the eigen-iteration converged.
  bool holds = false;
};

/// H[j][k] = Ki_alpha(x_j + x_k), alpha > 0.
GramVerdict gram_psd_in_x(const Evaluator& ev, double alpha,
                          std::span<const double> points,
                          double tol = kDefaultGramTolerance);

/// H[j][k] = Ki_{a_j + a_k}(x).
GramVerdict gram_psd_in_alpha(const Evaluator& ev, double x,
                              std::span<const double> alphas,
                              double tol = kDefaultGramTolerance);

// ---------------------------------------------------------------------------
// Monotone-ratio probes along an x grid.

struct MonotoneProbe {
  std::string name;
  double alpha = 0.0;
  std::vector<double> grid;
  std::vector<double> samples;
  /// One verdict per adjacent grid pair.
  std::vector<InequalityVerdict> steps;
  bool asserted = true;
  bool holds = true;
};

/// r(x) = -Ki_{alpha-1}(x)/Ki_alpha(x) = Ki'/Ki must be non-decreasing.
MonotoneProbe probe_log_convexity_x(const Evaluator& ev, double alpha,
                                    std::span<const double> grid,
                                    double tol = kDefaultVerdictTolerance);

/// s(x) = -x Ki_{alpha-1}(x)/Ki_alpha(x) = x Ki'/Ki must be non-increasing.
/// Asserted for alpha in {-1, 0, 1, ...}; report-only otherwise.
MonotoneProbe probe_geometric_concavity_x(const Evaluator& ev, double alpha,
                                          std::span<const double> grid,
                                          double tol = kDefaultVerdictTolerance);

// ---------------------------------------------------------------------------
// Sweeps.

struct GridSpec {
  std::vector<double> alpha_values;
  std::vector<double> x_values;
  std::vector<double> beta_values;
  std::vector<double> y_values;
  std::vector<double> lambda_values;
  std::vector<double> nu_values;
  std::vector<double> mu_values;
  std::vector<double> p_values;
  std::vector<double> r_values;
  std::vector<double> s_values;

  static GridSpec tiny();
  static GridSpec default_grid();
  static GridSpec dense();
  /// Named grid: "tiny", "default" or "dense". DomainError otherwise.
  static GridSpec named(const std::string& name);

  /// alpha and x lists non-empty, x inside [1e-6, 700], every value finite.
  void validate() const;
};

/// n log-spaced points from a to b inclusive.
std::vector<double> log_spaced(double a, double b, std::size_t n);

struct SweepEntry {
  std::string name;
  std::size_t count = 0;              // asserted verdicts
  std::size_t report_only_count = 0;  // verdicts outside the claimed domain
  double min_margin = 0.0;            // over asserted verdicts
  double min_slack = 0.0;             // min(margin + err_budget), asserted
  std::map<std::string, double> argmin;
  std::string argmin_verdict;  // sub-verdict name at the argmin point
  std::vector<InequalityVerdict> failures;
  double report_only_min_margin = 0.0;
  std::size_t report_only_violations = 0;
};

/// failures empty <=> min_slack >= -tolerance, per entry.
struct SweepReport {
  double tolerance = kDefaultVerdictTolerance;
  std::vector<SweepEntry> entries;

  std::size_t total_failures() const;
  bool passed() const { return total_failures() == 0; }
};

/// Every check the sweep knows, in execution order.
const std::vector<std::string>& check_names();

/// Runs each named check over the Cartesian product of the grid lists it
/// uses, restricted to that check's preconditions. "all" expands to every
/// check. Unknown names are rejected with DomainError before anything runs.
/// Iteration order is fixed, so reports are reproducible.
SweepReport sweep(const Evaluator& ev, const GridSpec& grid,
                  const std::vector<std::string>& names,
                  double tol = kDefaultVerdictTolerance);

}  // namespace bickley

#endif  // BICKLEY_HARNESS_HPP
