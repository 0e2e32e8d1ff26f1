#include "bickley/turan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "bickley/quadrature.hpp"

namespace bickley {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// cosh t - 1 without cancellation near t = 0.
double cosh_minus_one(double t) {
  const double sh = std::sinh(0.5 * t);
  return 2.0 * sh * sh;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Draws t from the density exp(-x (cosh t - 1)) on t >= 0 (normalized by
// exp(x) K_0(x)). Proposal: t = |z| / sqrt(x), z standard normal, i.e. the
// density exp(-x t^2 / 2); cosh t - 1 >= t^2 / 2 makes the acceptance
// ratio exp(-x (cosh t - 1 - t^2 / 2)) at most 1.
class KernelSampler {
 public:
  KernelSampler(std::uint64_t seed, double x)
      : gen_(seed), x_(x), inv_sqrt_x_(1.0 / std::sqrt(x)) {}

  // Returns cosh t - 1 for an accepted draw.
  double draw() {
    for (;;) {
      const double t = std::abs(normal()) * inv_sqrt_x_;
      const double d = cosh_minus_one(t);
      const double log_ratio = -x_ * (d - 0.5 * t * t);
      if (std::log(uniform_open()) <= log_ratio) return d;
    }
  }

 private:
  // Uniform on (0, 1] from the top 53 bits.
  double uniform_open() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double theta = 2.0 * std::numbers::pi * uniform_open();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  std::mt19937_64 gen_;
  double x_;
  double inv_sqrt_x_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }

  void merge(const RunningStats& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / n;
    m2 += o.m2 + delta * delta * static_cast<double>(count) *
                     static_cast<double>(o.count) / n;
    count += o.count;
  }
};

McEstimate finish_estimate(const RunningStats& s, double normalizer) {
  McEstimate est;
  est.count = s.count;
  est.mean = s.mean;
  est.m2 = s.m2;
  est.normalizer = normalizer;
  est.value = normalizer * s.mean;
  if (s.count > 1) {
    const double var = s.m2 / static_cast<double>(s.count - 1);
    est.std_error = normalizer * std::sqrt(var / static_cast<double>(s.count));
  } else {
    est.std_error = std::numeric_limits<double>::infinity();
  }
  est.variance_exploded = !(est.std_error <= 0.5 * std::abs(est.value));
  return est;
}

}  // namespace

void HankelSpec::validate() const {
  if (n < 0 || n > kMaxHankelOrder) {
    throw DomainError("Hankel size parameter n must lie in [0, 4], got " + std::to_string(n));
  }
  if (!std::isfinite(alpha)) throw DomainError("Hankel alpha must be finite");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("Hankel x must be positive and finite");
}

void McConfig::validate() const {
  if (samples < 2) throw DomainError("Monte-Carlo sample count must be at least 2");
  if (batch == 0) throw DomainError("Monte-Carlo batch size must be positive");
}

HankelValues hankel_matrix(const HankelSpec& spec, const EvalConfig& cfg) {
  spec.validate();
  const auto size = static_cast<std::size_t>(spec.n + 1);
  HankelValues out{linalg::Matrix(size), linalg::Matrix(size)};
  // Entries depend on j + k only.
  std::vector<KiValue> diag;
  for (std::size_t d = 0; d < 2 * size - 1; ++d) {
    diag.push_back(ki(spec.alpha - static_cast<double>(d), spec.x, cfg));
  }
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t k = 0; k < size; ++k) {
      out.values(j, k) = diag[j + k].value;
      out.errors(j, k) = diag[j + k].abs_err_est;
    }
  return out;
}

KiValue det_ki(const HankelSpec& spec, const EvalConfig& cfg) {
  const auto h = hankel_matrix(spec, cfg);
  if (spec.n == 0) return {h.values(0, 0), h.errors(0, 0)};
  const double det = linalg::determinant(h.values);
  const auto cof = linalg::cofactors(h.values);
  const std::size_t size = h.values.size();
  double perturb = 0.0;
  double magnitude = 0.0;
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t k = 0; k < size; ++k) {
      perturb += std::abs(cof(j, k)) * h.errors(j, k);
      magnitude += std::abs(cof(j, k) * h.values(j, k));
    }
  const double rounding = static_cast<double>(size) * kEps * magnitude;
  return {det, perturb + rounding};
}

KiValue det_oracle_2x2(double alpha, double x, const EvalConfig& cfg) {
  cfg.validate();
  HankelSpec{alpha, 1, x}.validate();
  // The (ch t - ch s)^2 factor is at most ch t^2 + ch s^2, so the cutoff for
  // order alpha - 2 covers the whole integrand.
  const double t_end = detail::truncation_point(alpha - 2.0, x, 0, cfg);
  const int max_level = std::min(cfg.max_refinements, 10);
  constexpr int min_level = 4;

  double previous = 0.0;
  double diff = std::numeric_limits<double>::infinity();
  double sum0 = 0.0;
  double sum2 = 0.0;
  for (int level = 2; level <= max_level; ++level) {
    const auto rule = quad::tanh_sinh_rule(0.0, t_end, level);
    // Per-node factors of the scaled integrand exp(-x(ch t - 1)) ch t^-alpha.
    std::vector<double> wf;
    std::vector<double> d;
    wf.reserve(rule.nodes.size());
    d.reserve(rule.nodes.size());
    sum0 = 0.0;
    sum2 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double di = cosh_minus_one(rule.nodes[i]);
      const double v = rule.weights[i] * std::exp(-x * di - alpha * std::log1p(di));
      if (v == 0.0) continue;
      wf.push_back(v);
      d.push_back(di);
      sum0 += v;
      sum2 += v * (1.0 + di) * (1.0 + di);
    }
    // Explicit pairwise sum; the diagonal contributes nothing.
    double total = 0.0;
    for (std::size_t i = 0; i < wf.size(); ++i) {
      double row = 0.0;
      for (std::size_t j = i + 1; j < wf.size(); ++j) {
        const double gap = d[i] - d[j];
        row += wf[j] * gap * gap;
      }
      total += wf[i] * row;
    }
    if (level > 2) {
      diff = std::abs(total - previous);
      const double target = std::max(cfg.abs_tol * std::exp(2.0 * x), cfg.rel_tol * total);
      if (level >= min_level && diff <= target) {
        previous = total;
        break;
      }
    }
    previous = total;
    if (level == max_level) {
      const double scale = std::exp(-2.0 * x);
      throw ConvergenceError("2x2 determinant oracle did not converge", scale * total,
                             scale * diff);
    }
  }

  const double tail = detail::scaled_tail_bound(alpha - 2.0, x, 0, t_end) * sum0 +
                      detail::scaled_tail_bound(alpha, x, 0, t_end) * sum2;
  const double scale = std::exp(-2.0 * x);
  const double value = scale * previous;
  if (!std::isfinite(value)) throw RangeError("2x2 determinant oracle overflows");
  return {value, scale * (diff + tail) + 16.0 * kEps * value};
}

McEstimate McEstimate::pooled(const McEstimate& a, const McEstimate& b) {
  if (a.normalizer != b.normalizer) {
    throw DomainError("cannot pool Monte-Carlo estimates of different quantities");
  }
  RunningStats s{a.count, a.mean, a.m2};
  s.merge(RunningStats{b.count, b.mean, b.m2});
  return finish_estimate(s, a.normalizer);
}

McEstimate det_oracle_mc(const HankelSpec& spec, const McConfig& mc,
                         const EvalConfig& cfg) {
  spec.validate();
  mc.validate();
  if (spec.n < 1) throw DomainError("Monte-Carlo determinant oracle needs n >= 1");
  const int dim = spec.n + 1;
  const double k0 = ki(0.0, spec.x, cfg).value;
  const double normalizer = std::pow(k0, dim) / factorial(dim);

  constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
  const std::uint64_t batches = (mc.samples + mc.batch - 1) / mc.batch;
  RunningStats total;
  std::vector<double> d(static_cast<std::size_t>(dim));
  for (std::uint64_t b = 0; b < batches; ++b) {
    const std::uint64_t n_batch = std::min(mc.batch, mc.samples - b * mc.batch);
    KernelSampler sampler(splitmix64(mc.seed ^ (golden * (b + 1))), spec.x);
    RunningStats stats;
    for (std::uint64_t i = 0; i < n_batch; ++i) {
      double log_c = 0.0;
      for (auto& dj : d) {
        dj = sampler.draw();
        log_c += std::log1p(dj);
      }
      double vandermonde = 1.0;
      for (int j = 0; j < dim; ++j)
        for (int k = j + 1; k < dim; ++k) {
          const double gap = d[j] - d[k];
          vandermonde *= gap * gap;
        }
      stats.add(vandermonde * std::exp(-spec.alpha * log_c));
    }
    total.merge(stats);
  }
  return finish_estimate(total, normalizer);
}

std::vector<InequalityVerdict> probe_alternating_differences(
    std::span<const double> grid, std::span<const double> values,
    std::span<const double> errs, int order, double tol) {
  if (order < 0 || order > 3) throw DomainError("difference order must lie in [0, 3]");
  if (values.size() != grid.size() || errs.size() != grid.size()) {
    throw DomainError("grid, values and errors must have equal length");
  }
  if (grid.size() >= 2) {
    const double h = grid[1] - grid[0];
    if (!(h > 0.0)) throw DomainError("probe grid must be strictly ascending");
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (std::abs(grid[i] - grid[i - 1] - h) > 1e-6 * h) {
        throw DomainError("probe grid must have a constant step");
      }
    }
  }

  static constexpr double binom[4][4] = {
      {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  std::vector<InequalityVerdict> out;
  for (int m = 0; m <= order; ++m) {
    const auto span = static_cast<std::size_t>(m);
    for (std::size_t i = 0; i + span < grid.size(); ++i) {
      // (-1)^m Delta^m f(x_i) = sum_k (-1)^k C(m,k) f(x_{i+k}) up to the
      // outer sign, folded in below.
      double diff = 0.0;
      double magnitude = 0.0;
      double err = 0.0;
      for (int k = 0; k <= m; ++k) {
        const double c = binom[m][k];
        const double f = values[i + static_cast<std::size_t>(k)];
        diff += ((m - k) % 2 == 0 ? c : -c) * f;
        magnitude += c * std::abs(f);
        err += c * errs[i + static_cast<std::size_t>(k)];
      }
      const double signed_diff = (m % 2 == 0) ? diff : -diff;
      const double scale = std::max(magnitude, 1e-300);
      InequalityVerdict v;
      v.name = "alternating_difference";
      v.params = {{"order", static_cast<double>(m)}, {"x", grid[i]}};
      v.lhs = 0.0;
      v.rhs = signed_diff;
      v.margin = signed_diff / scale;
      v.err_budget = err / scale;
      v.tolerance = tol;
      v.holds = v.margin >= -(tol + v.err_budget);
      out.push_back(std::move(v));
    }
  }
  return out;
}

CmProbe det_cm_probe(double alpha, int n, std::span<const double> grid, int order,
                     const EvalConfig& cfg, double tol) {
  CmProbe probe;
  probe.alpha = alpha;
  probe.n = n;
  probe.order = order;
  probe.grid.assign(grid.begin(), grid.end());
  std::vector<double> values;
  std::vector<double> errs;
  for (double x : grid) {
    const auto det = det_ki(HankelSpec{alpha, n, x}, cfg);
    probe.determinants.push_back(det);
    values.push_back(det.value);
    errs.push_back(det.abs_err_est);
  }
  probe.steps = probe_alternating_differences(grid, values, errs, order, tol);
  for (auto& v : probe.steps) {
    v.params["alpha"] = alpha;
    v.params["n"] = n;
    probe.holds = probe.holds && v.holds;
  }
  return probe;
}

}  // namespace bickley
