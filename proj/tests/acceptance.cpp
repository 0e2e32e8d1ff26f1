// Acceptance checks for the library and the CLI. Prints one PASS/FAIL line
// per criterion and exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bessel_oracle.hpp"
#include "bickley/bounds.hpp"
#include "bickley/core.hpp"
#include "bickley/harness.hpp"
#include "bickley/turan.hpp"
#include "cli.hpp"

using namespace bickley;
using oracle::rel_diff;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what;
      pass = false;
    }
  }
};

std::string cli_output(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run_cli(args, out, err);
  return out.str();
}

// Runs the installed executable so the check covers real process output.
std::string process_output(const std::string& cmd, int& code) {
  std::string text;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    code = -1;
    return text;
  }
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, got);
  code = pclose(pipe);
  return text;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string at(double a, double x) { return "(alpha=" + fmt(a) + ", x=" + fmt(x) + ")"; }

void reference_values(Outcome& o) {
  const double e0 = rel_diff(ki(0.0, 1.0).value, oracle::bessel_k0(1.0));
  const double e1 = rel_diff(ki(-1.0, 1.0).value, oracle::bessel_k1(1.0));
  o.require(e0 <= 1e-10, "Ki_0(1) vs K_0(1) rel " + fmt(e0));
  o.require(e1 <= 1e-10, "Ki_-1(1) vs K_1(1) rel " + fmt(e1));
  if (o.pass) o.detail << "rel errors " << fmt(e0) << ", " << fmt(e1);
}

void value_at_zero(Outcome& o) {
  double worst = 0.0;
  for (double a : {1.0, 2.0, 3.0, 5.0}) {
    const double d = rel_diff(ki(a, 1e-8).value, ki_at_zero(a));
    worst = std::max(worst, d);
    o.require(d <= 1e-5, "alpha=" + fmt(a) + " rel " + fmt(d));
  }
  constexpr double pi = std::numbers::pi;
  o.require(rel_diff(ki_at_zero(1.0), pi / 2) <= 1e-14, "Ki_1(0) != pi/2");
  o.require(rel_diff(ki_at_zero(2.0), 1.0) <= 1e-14, "Ki_2(0) != 1");
  o.require(rel_diff(ki_at_zero(3.0), pi / 4) <= 1e-14, "Ki_3(0) != pi/4");
  if (o.pass) o.detail << "worst rel " << fmt(worst);
}

void fractional_representation(Outcome& o) {
  double worst = 0.0;
  int points = 0;
  for (double a : {0.5, 1.0, 2.0, 3.0})
    for (double x : {0.25, 1.0, 4.0}) {
      const double d = rel_diff(ki_via_fractional(a, x).value, ki(a, x).value);
      worst = std::max(worst, d);
      ++points;
      o.require(d <= 1e-8, at(a, x) + " rel " + fmt(d));
    }
  if (o.pass) o.detail << points << " points, worst rel " << fmt(worst);
}

void derivative_recurrence(Outcome& o) {
  double worst = 0.0;
  int points = 0;
  for (double a : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0})
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double h = 1e-4 * x;
      // Fourth-order central difference.
      const double fd = (-ki(a, x + 2 * h).value + 8 * ki(a, x + h).value -
                         8 * ki(a, x - h).value + ki(a, x - 2 * h).value) /
                        (12 * h);
      const double d = rel_diff(fd, -ki(a - 1, x).value);
      worst = std::max(worst, d);
      ++points;
      o.require(d <= 1e-6, at(a, x) + " rel " + fmt(d));
    }
  if (o.pass) o.detail << points << " points, worst rel " << fmt(worst);
}

void full_sweep(Outcome& o) {
  int code = 0;
  const std::string out = cli_output({"verify", "--suite", "all", "--format", "csv"}, code);
  o.require(code == cli::kExitPass, "verify --suite all exit code " + std::to_string(code));
  Evaluator ev;
  const auto report = sweep(ev, GridSpec::default_grid(), {"all"});
  std::size_t verdicts = 0;
  for (const auto& e : report.entries) verdicts += e.count;
  o.require(report.passed(), std::to_string(report.total_failures()) + " failures");
  o.require(report.entries.size() == check_names().size(), "not every check ran");
  if (o.pass)
    o.detail << report.entries.size() << " checks, " << verdicts << " verdicts, 0 failures";
}

void degenerate_equalities(Outcome& o) {
  const Evaluator ev;
  std::vector<InequalityVerdict> cases;
  for (double a : {-2.0, 0.0, 1.5, 4.0})
    for (double x : {0.2, 1.0, 3.0}) {
      cases.push_back(check_turan(ev, a, a, x));
      cases.push_back(check_chebyshev(ev, a, 0.0, x));
      cases.push_back(check_chebyshev(ev, a, -a, x));
      cases.push_back(check_pair_mean(ev, a, 0.0, x));
      cases.push_back(check_pair_product(ev, a, 0.0, 0.0, x));
      cases.push_back(check_joint_log_convexity(ev, x, 1.0 + std::abs(a), 0.0, 0.0));
      cases.push_back(check_log_convexity_alpha(ev, a, a + 2.0, 0.0, x));
      cases.push_back(check_log_convexity_alpha(ev, a, a + 2.0, 1.0, x));
      cases.push_back(check_log_convexity_x(ev, a, x, 2 * x, 0.0));
      auto [l, r] = check_geometric_concavity_chain(ev, a, x, x);
      cases.push_back(l);
      cases.push_back(r);
    }
  for (double x : {0.2, 1.0, 3.0}) cases.push_back(check_relative_convexity(ev, 2.0, x));
  const std::vector<double> twice{1.0, 1.0};
  cases.push_back(probe_log_convexity_x(ev, 2.0, twice).steps.at(0));
  for (const auto& v : cases)
    o.require(std::abs(v.margin) <= 4.0 * v.err_budget,
              v.name + " margin " + fmt(v.margin) + " budget " + fmt(v.err_budget));
  if (o.pass) o.detail << cases.size() << " equality cases";
}

void gram_matrices(Outcome& o) {
  const Evaluator ev;
  std::mt19937_64 gen(20240601);
  std::uniform_int_distribution<int> size(1, 5);
  std::uniform_real_distribution<double> alpha(0.05, 4.0);
  std::uniform_real_distribution<double> point(0.05, 5.0);
  std::uniform_real_distribution<double> order(-3.0, 3.0);
  double worst = INFINITY;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> pts(static_cast<std::size_t>(size(gen)));
    const double a = alpha(gen);
    for (auto& p : pts) p = point(gen);
    const auto g = gram_psd_in_x(ev, a, pts);
    worst = std::min(worst, g.lambda_min / g.trace);
    o.require(g.lambda_min >= -1e-10 * g.trace, "x mode, alpha=" + fmt(a));
  }
  for (int i = 0; i < 200; ++i) {
    std::vector<double> alphas(static_cast<std::size_t>(size(gen)));
    const double x = point(gen);
    for (auto& a : alphas) a = order(gen);
    const auto g = gram_psd_in_alpha(ev, x, alphas);
    worst = std::min(worst, g.lambda_min / g.trace);
    o.require(g.lambda_min >= -1e-10 * g.trace, "alpha mode, x=" + fmt(x));
  }
  if (o.pass) o.detail << "400 matrices, min lambda_min/trace " << fmt(worst);
}

void oracle_triangle(Outcome& o) {
  double worst_rel = 0.0, worst_z = 0.0;
  McConfig mc;
  mc.samples = 1'000'000;
  mc.seed = 42;
  for (double a : {0.0, 2.0, 4.0})
    for (double x : {0.5, 1.0, 2.0}) {
      const double det = det_ki({a, 1, x}).value;
      const double d = rel_diff(det, det_oracle_2x2(a, x).value);
      worst_rel = std::max(worst_rel, d);
      o.require(d <= 1e-8, "2x2 oracle " + at(a, x) + " rel " + fmt(d));
      for (int n : {1, 2}) {
        const double exact = n == 1 ? det : det_ki({a, n, x}).value;
        const auto est = det_oracle_mc({a, n, x}, mc);
        const double z = std::abs(est.value - exact) / est.std_error;
        worst_z = std::max(worst_z, z);
        o.require(z <= 3.0, "Monte Carlo n=" + std::to_string(n) + " " + at(a, x) + " z " + fmt(z));
      }
    }
  if (o.pass) o.detail << "worst 2x2 rel " << fmt(worst_rel) << ", worst |z| " << fmt(worst_z);
}

void determinant_probes(Outcome& o) {
  std::vector<double> grid;
  for (int i = 0; i <= 18; ++i) grid.push_back(0.5 + 0.25 * i);
  double worst = INFINITY;
  std::size_t verdicts = 0;
  for (int n : {1, 2})
    for (double a : {-2.0, 0.0, 2.0}) {
      const auto p = det_cm_probe(a, n, grid, 2);
      o.require(p.holds, "n=" + std::to_string(n) + " alpha=" + fmt(a));
      for (const auto& v : p.steps) worst = std::min(worst, v.margin);
      verdicts += p.steps.size();
    }
  if (o.pass) o.detail << verdicts << " verdicts, min margin " << fmt(worst);
}

void determinism(Outcome& o) {
  const std::vector<std::vector<std::string>> invocations{
      {"eval", "--alpha", "0.5", "--x", "2"},
      {"table", "--alpha-range", "-1:2:0.5", "--x-log-range", "0.1:10:5", "--format", "csv"},
      {"verify", "--grid", "tiny"},
      {"det", "--alpha", "3", "--n", "2", "--x", "1", "--oracle", "mc", "--seed", "42",
       "--samples", "100000"},
  };
  for (const auto& args : invocations) {
    int c1 = 0, c2 = 0;
    const auto a = cli_output(args, c1);
    const auto b = cli_output(args, c2);
    o.require(c1 == 0 && c2 == 0 && !a.empty() && a == b, "in-process " + args[0]);
  }
  const std::string cmd = std::string(BICKLEY_CLI_PATH) +
                          " det --alpha 2 --n 1 --x-range 0.5:2:0.5 --oracle mc --samples 50000"
                          " --seed 7 2>&1";
  int c1 = 0, c2 = 0;
  const auto a = process_output(cmd, c1);
  const auto b = process_output(cmd, c2);
  o.require(c1 == 0 && c2 == 0 && !a.empty() && a == b, "executable det output differs");
  if (o.pass) o.detail << invocations.size() + 1 << " invocations byte-identical";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"reference values K_0(1), K_1(1)", reference_values},
      {"closed form at x -> 0", value_at_zero},
      {"fractional-integral representation", fractional_representation},
      {"x-derivative recurrence", derivative_recurrence},
      {"full inequality sweep", full_sweep},
      {"equality degeneracies", degenerate_equalities},
      {"Gram matrices positive semidefinite", gram_matrices},
      {"determinant oracle triangle", oracle_triangle},
      {"determinant monotonicity probes", determinant_probes},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu %-38s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), secs, o.detail.str().c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
