#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "bickley/core.hpp"
#include "bickley/harness.hpp"
#include "bickley/turan.hpp"

namespace bickley::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr double kQuadOracleRelTol = 1e-8;
constexpr double kMcSigmas = 3.0;

struct Options {
  std::string command;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double x = std::numeric_limits<double>::quiet_NaN();
  std::string alpha_range;
  std::string x_range;
  std::string x_log_range;
  double rel_tol = EvalConfig{}.rel_tol;
  int max_refinements = EvalConfig{}.max_refinements;
  double tol = kDefaultVerdictTolerance;
  std::string suite = "all";
  std::string grid = "default";
  std::string oracle = "quad";
  std::uint64_t samples = McConfig{}.samples;
  std::uint64_t seed = McConfig{}.seed;
  std::uint64_t batch = McConfig{}.batch;
  int n = 1;
  int order = 2;
  std::string format = "json";
  std::string out_path;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Result of a command: the rendered document and the exit code it implies.
struct Outcome {
  std::string text;
  int code = kExitPass;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty()) {
    throw DomainError("malformed number '" + s + "' in " + what);
  }
  return v;
}

bool is_set(double v) { return !std::isnan(v); }

std::string csv_join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string join_doubles(const std::vector<double>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += format_double(v[i]);
  }
  return s;
}

std::string join_params(const std::map<std::string, double>& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ';';
    s += k + "=" + format_double(v);
  }
  return s;
}

EvalConfig eval_config(const Options& o) {
  EvalConfig cfg;
  cfg.rel_tol = o.rel_tol;
  cfg.max_refinements = o.max_refinements;
  cfg.validate();
  return cfg;
}

Json config_json(const Options& o, const EvalConfig& cfg) {
  Json c;
  c["command"] = o.command;
  c["format"] = o.format;
  c["rel_tol"] = cfg.rel_tol;
  c["abs_tol"] = cfg.abs_tol;
  c["max_refinements"] = cfg.max_refinements;
  c["truncation_guard"] = cfg.truncation_guard;
  return c;
}

Json document(const std::string& command, Json config) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = command;
  doc["config"] = std::move(config);
  return doc;
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

Json verdict_json(const InequalityVerdict& v) {
  Json j;
  j["name"] = v.name;
  j["params"] = Json::object();
  for (const auto& [k, val] : v.params) j["params"][k] = val;
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  j["margin"] = v.margin;
  j["err_budget"] = v.err_budget;
  j["tolerance"] = v.tolerance;
  j["holds"] = v.holds;
  j["asserted"] = v.asserted;
  return j;
}

Json grid_json(const std::string& name, const GridSpec& g) {
  Json j;
  j["name"] = name;
  j["alpha"] = g.alpha_values;
  j["x"] = g.x_values;
  j["beta"] = g.beta_values;
  j["y"] = g.y_values;
  j["lambda"] = g.lambda_values;
  j["nu"] = g.nu_values;
  j["mu"] = g.mu_values;
  j["p"] = g.p_values;
  j["r"] = g.r_values;
  j["s"] = g.s_values;
  return j;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> alpha_points(const Options& o) {
  if (!o.alpha_range.empty()) {
    if (is_set(o.alpha)) throw UsageError("give either --alpha or --alpha-range");
    return parse_range(o.alpha_range);
  }
  if (is_set(o.alpha)) return {o.alpha};
  throw UsageError("missing --alpha or --alpha-range");
}

// x points from --x, --x-range or --x-log-range; arithmetic is set when the
// points have a constant step.
std::vector<double> x_points(const Options& o, bool* arithmetic = nullptr) {
  const int given = (is_set(o.x) ? 1 : 0) + (o.x_range.empty() ? 0 : 1) +
                    (o.x_log_range.empty() ? 0 : 1);
  if (given == 0) throw UsageError("missing --x, --x-range or --x-log-range");
  if (given > 1) throw UsageError("give only one of --x, --x-range, --x-log-range");
  if (arithmetic) *arithmetic = o.x_log_range.empty();
  if (is_set(o.x)) return {o.x};
  if (!o.x_range.empty()) return parse_range(o.x_range);
  return parse_log_range(o.x_log_range);
}

Json ki_json(double alpha, double x, const KiValue& v) {
  Json r;
  r["alpha"] = alpha;
  r["x"] = x;
  r["value"] = v.value;
  r["abs_err_est"] = v.abs_err_est;
  return r;
}

// ---------------------------------------------------------------------------

Outcome cmd_eval(const Options& o) {
  const auto cfg = eval_config(o);
  if (!is_set(o.alpha) || !is_set(o.x)) throw UsageError("eval needs --alpha and --x");
  const auto v = ki(o.alpha, o.x, cfg);
  if (o.format == "csv") {
    return {csv_join({"alpha", "x", "value", "abs_err_est", "rel_tol_used"}) +
            csv_join({format_double(o.alpha), format_double(o.x), format_double(v.value),
                      format_double(v.abs_err_est), format_double(cfg.rel_tol)})};
  }
  auto doc = document("eval", config_json(o, cfg));
  auto r = ki_json(o.alpha, o.x, v);
  r["rel_tol_used"] = cfg.rel_tol;
  doc["result"] = std::move(r);
  return {render(doc)};
}

Outcome cmd_table(const Options& o) {
  const auto cfg = eval_config(o);
  const auto alphas = sorted_unique(alpha_points(o));
  const auto xs = sorted_unique(x_points(o));
  if (o.format == "csv") {
    std::string text = csv_join({"alpha", "x", "value", "abs_err_est", "rel_tol", "abs_tol",
                                 "max_refinements", "truncation_guard"});
    for (double a : alphas)
      for (double x : xs) {
        const auto v = ki(a, x, cfg);
        text += csv_join({format_double(a), format_double(x), format_double(v.value),
                          format_double(v.abs_err_est), format_double(cfg.rel_tol),
                          format_double(cfg.abs_tol), std::to_string(cfg.max_refinements),
                          format_double(cfg.truncation_guard)});
      }
    return {text};
  }
  auto config = config_json(o, cfg);
  config["alpha"] = alphas;
  config["x"] = xs;
  auto doc = document("table", std::move(config));
  doc["rows"] = Json::array();
  for (double a : alphas)
    for (double x : xs) doc["rows"].push_back(ki_json(a, x, ki(a, x, cfg)));
  return {render(doc)};
}

Json sweep_json(const SweepReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json j;
    j["name"] = e.name;
    j["count"] = e.count;
    j["report_only_count"] = e.report_only_count;
    j["min_margin"] = e.min_margin;
    j["min_slack"] = e.min_slack;
    j["argmin_verdict"] = e.argmin_verdict;
    j["argmin"] = Json::object();
    for (const auto& [k, v] : e.argmin) j["argmin"][k] = v;
    j["failures"] = Json::array();
    for (const auto& f : e.failures) j["failures"].push_back(verdict_json(f));
    j["report_only_min_margin"] = e.report_only_min_margin;
    j["report_only_violations"] = e.report_only_violations;
    entries.push_back(std::move(j));
  }
  return entries;
}

Outcome cmd_verify(const Options& o) {
  const auto cfg = eval_config(o);
  const auto grid = GridSpec::named(o.grid);
  std::vector<std::string> suites;
  for (auto& s : split(o.suite, ',')) {
    if (s.empty()) throw UsageError("empty name in --suite");
    suites.push_back(s);
  }
  Evaluator ev(cfg);
  const auto report = sweep(ev, grid, suites, o.tol);
  const int code = report.passed() ? kExitPass : kExitVerification;

  if (o.format == "csv") {
    std::string text = csv_join({"name", "count", "report_only_count", "min_margin",
                                 "min_slack", "failures", "report_only_min_margin",
                                 "report_only_violations", "argmin_verdict", "argmin",
                                 "tolerance", "rel_tol", "grid"});
    for (const auto& e : report.entries) {
      text += csv_join({e.name, std::to_string(e.count), std::to_string(e.report_only_count),
                        format_double(e.min_margin), format_double(e.min_slack),
                        std::to_string(e.failures.size()),
                        format_double(e.report_only_min_margin),
                        std::to_string(e.report_only_violations), e.argmin_verdict,
                        join_params(e.argmin), format_double(o.tol),
                        format_double(cfg.rel_tol), o.grid});
    }
    return {text, code};
  }
  auto config = config_json(o, cfg);
  config["tolerance"] = o.tol;
  config["suite"] = suites;
  config["grid"] = grid_json(o.grid, grid);
  auto doc = document("verify", std::move(config));
  doc["entries"] = sweep_json(report);
  doc["total_failures"] = report.total_failures();
  doc["passed"] = report.passed();
  return {render(doc), code};
}

Json gram_json(const GramVerdict& g) {
  Json j;
  Json rows = Json::array();
  for (std::size_t r = 0; r < g.matrix.size(); ++r) {
    std::vector<double> row;
    for (std::size_t c = 0; c < g.matrix.size(); ++c) row.push_back(g.matrix(r, c));
    rows.push_back(row);
  }
  j["matrix"] = std::move(rows);
  j["eigenvalues"] = g.eigenvalues;
  j["leading_minors"] = g.leading_minors;
  j["lambda_min"] = g.lambda_min;
  j["trace"] = g.trace;
  j["tolerance"] = g.tolerance;
  j["converged"] = g.converged;
  j["holds"] = g.holds;
  return j;
}

Outcome cmd_gram(const Options& o) {
  const auto cfg = eval_config(o);
  Evaluator ev(cfg);
  const bool x_mode = !o.x_range.empty() || !o.x_log_range.empty();
  const bool alpha_mode = !o.alpha_range.empty();
  if (x_mode == alpha_mode) {
    throw UsageError("gram needs --alpha with an x range, or --x with --alpha-range");
  }
  std::string mode;
  double fixed = 0.0;
  std::vector<double> points;
  GramVerdict g;
  if (x_mode) {
    if (!is_set(o.alpha)) throw UsageError("gram in x needs --alpha");
    mode = "x";
    fixed = o.alpha;
    points = x_points(o);
    g = gram_psd_in_x(ev, o.alpha, points, kDefaultGramTolerance);
  } else {
    if (!is_set(o.x)) throw UsageError("gram in alpha needs --x");
    mode = "alpha";
    fixed = o.x;
    points = parse_range(o.alpha_range);
    g = gram_psd_in_alpha(ev, o.x, points, kDefaultGramTolerance);
  }
  const int code = g.holds ? kExitPass : kExitVerification;
  if (o.format == "csv") {
    return {csv_join({"mode", "fixed", "points", "lambda_min", "trace", "tolerance",
                      "converged", "holds", "eigenvalues", "rel_tol"}) +
                csv_join({mode, format_double(fixed), join_doubles(points, ';'),
                          format_double(g.lambda_min), format_double(g.trace),
                          format_double(g.tolerance), g.converged ? "true" : "false",
                          g.holds ? "true" : "false", join_doubles(g.eigenvalues, ';'),
                          format_double(cfg.rel_tol)}),
            code};
  }
  auto config = config_json(o, cfg);
  config["mode"] = mode;
  config[mode == "x" ? "alpha" : "x"] = fixed;
  config["points"] = points;
  auto doc = document("gram", std::move(config));
  doc["result"] = gram_json(g);
  doc["passed"] = g.holds;
  return {render(doc), code};
}

struct DetRow {
  double x = 0.0;
  KiValue det;
  std::string oracle;
  KiValue reference;
  double discrepancy = 0.0;
  double threshold = 0.0;
  bool variance_exploded = false;
  bool agree = false;
  bool asserted = true;
};

DetRow compare_det(const Options& o, const EvalConfig& cfg, const McConfig& mc, double x) {
  DetRow row;
  row.x = x;
  const HankelSpec spec{o.alpha, o.n, x};
  row.det = det_ki(spec, cfg);
  if (o.n == 0) {
    row.oracle = "eval";
    row.reference = ki(o.alpha, x, cfg);
    row.discrepancy = std::abs(row.det.value - row.reference.value);
    row.agree = row.det.value == row.reference.value;
    return row;
  }
  if (o.oracle == "quad") {
    if (o.n != 1) throw UsageError("--oracle quad supports n = 1 only; use --oracle mc");
    row.oracle = "quad";
    row.reference = det_oracle_2x2(o.alpha, x, cfg);
    row.threshold = std::max(kQuadOracleRelTol * std::abs(row.det.value),
                             row.det.abs_err_est + row.reference.abs_err_est);
  } else {
    row.oracle = "mc";
    const auto est = det_oracle_mc(spec, mc, cfg);
    row.reference = est.as_ki();
    row.variance_exploded = est.variance_exploded;
    row.threshold = kMcSigmas * est.std_error + row.det.abs_err_est;
    row.asserted = mc.samples >= kMinAssertedSamples && !est.variance_exploded;
  }
  row.discrepancy = std::abs(row.det.value - row.reference.value);
  row.agree = row.discrepancy <= row.threshold;
  return row;
}

// Positivity and alternating differences of x -> det. Non-uniform grids
// only get the positivity part.
std::vector<InequalityVerdict> det_probe(const Options& o, const EvalConfig& cfg,
                                         const std::vector<double>& xs, bool arithmetic) {
  if (arithmetic) {
    const int order = std::min<int>(o.order, static_cast<int>(xs.size()) - 1);
    return det_cm_probe(o.alpha, o.n, xs, order, cfg, o.tol).steps;
  }
  std::vector<InequalityVerdict> steps;
  for (double x : xs) {
    const std::vector<double> one{x};
    for (auto& v : det_cm_probe(o.alpha, o.n, one, 0, cfg, o.tol).steps) {
      steps.push_back(std::move(v));
    }
  }
  return steps;
}

Outcome cmd_det(const Options& o) {
  const auto cfg = eval_config(o);
  if (!is_set(o.alpha)) throw UsageError("det needs --alpha");
  if (o.order < 0 || o.order > 3) throw UsageError("--order must lie in [0, 3]");
  bool arithmetic = true;
  const auto xs = sorted_unique(x_points(o, &arithmetic));
  const McConfig mc{o.samples, o.seed, o.batch};
  mc.validate();

  std::vector<DetRow> rows;
  for (double x : xs) rows.push_back(compare_det(o, cfg, mc, x));
  const auto steps = det_probe(o, cfg, xs, arithmetic);

  bool passed = true;
  for (const auto& r : rows) passed = passed && (r.agree || !r.asserted);
  for (const auto& v : steps) passed = passed && v.holds;
  const int code = passed ? kExitPass : kExitVerification;

  if (o.format == "csv") {
    std::string text = csv_join({"alpha", "n", "x", "det", "det_err", "oracle", "oracle_value",
                                 "oracle_err", "discrepancy", "threshold", "agree", "asserted",
                                 "variance_exploded", "samples", "seed", "batch", "rel_tol"});
    for (const auto& r : rows) {
      text += csv_join({format_double(o.alpha), std::to_string(o.n), format_double(r.x),
                        format_double(r.det.value), format_double(r.det.abs_err_est), r.oracle,
                        format_double(r.reference.value), format_double(r.reference.abs_err_est),
                        format_double(r.discrepancy), format_double(r.threshold),
                        r.agree ? "true" : "false", r.asserted ? "true" : "false",
                        r.variance_exploded ? "true" : "false", std::to_string(o.samples),
                        std::to_string(o.seed), std::to_string(o.batch),
                        format_double(cfg.rel_tol)});
    }
    return {text, code};
  }

  auto config = config_json(o, cfg);
  config["tolerance"] = o.tol;
  config["alpha"] = o.alpha;
  config["n"] = o.n;
  config["x"] = xs;
  config["oracle"] = o.n == 0 ? "eval" : o.oracle;
  config["order"] = o.order;
  config["samples"] = o.samples;
  config["seed"] = o.seed;
  config["batch"] = o.batch;
  auto doc = document("det", std::move(config));
  doc["comparisons"] = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["x"] = r.x;
    j["det"] = r.det.value;
    j["det_err"] = r.det.abs_err_est;
    j["oracle"] = r.oracle;
    j["oracle_value"] = r.reference.value;
    j["oracle_err"] = r.reference.abs_err_est;
    j["discrepancy"] = r.discrepancy;
    j["threshold"] = r.threshold;
    j["agree"] = r.agree;
    j["asserted"] = r.asserted;
    j["variance_exploded"] = r.variance_exploded;
    doc["comparisons"].push_back(std::move(j));
  }
  doc["cm_probe"] = Json::array();
  for (const auto& v : steps) doc["cm_probe"].push_back(verdict_json(v));
  doc["passed"] = passed;
  return {render(doc), code};
}

// Fixed battery: sweep, Gram matrices, determinant triangle and probes.
Outcome cmd_report(const Options& o) {
  const auto cfg = eval_config(o);
  const auto grid = GridSpec::named(o.grid);
  Evaluator ev(cfg);
  const auto report = sweep(ev, grid, {"all"}, o.tol);

  struct Section {
    std::string section;
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    double min_margin = std::numeric_limits<double>::infinity();
  };
  std::vector<Section> sections;
  for (const auto& e : report.entries) {
    sections.push_back({"verify", e.name, e.count, e.failures.size(),
                        e.count > 0 ? e.min_margin : 0.0});
  }

  const std::vector<double> gram_x{0.1, 0.5, 1.0, 2.0, 4.0};
  for (double a : {0.5, 1.0, 2.5}) {
    const auto g = gram_psd_in_x(ev, a, gram_x);
    sections.push_back({"gram_x", "alpha=" + format_double(a), 1, g.holds ? 0u : 1u,
                        g.lambda_min / g.trace});
  }
  const std::vector<double> gram_alpha{-1.0, 0.0, 0.5, 1.5, 3.0};
  for (double x : {0.5, 1.0, 2.0}) {
    const auto g = gram_psd_in_alpha(ev, x, gram_alpha);
    sections.push_back({"gram_alpha", "x=" + format_double(x), 1, g.holds ? 0u : 1u,
                        g.lambda_min / g.trace});
  }

  Options det_opts = o;
  det_opts.n = 1;
  const McConfig mc{o.samples, o.seed, o.batch};
  mc.validate();
  for (double a : {0.0, 2.0, 4.0}) {
    det_opts.alpha = a;
    Section s{"det_oracle", "alpha=" + format_double(a)};
    for (double x : {0.5, 1.0, 2.0}) {
      const auto r = compare_det(det_opts, cfg, mc, x);
      ++s.checks;
      if (!r.agree && r.asserted) ++s.failures;
      const double m = r.threshold > 0.0 ? 1.0 - r.discrepancy / r.threshold : 0.0;
      s.min_margin = std::min(s.min_margin, m);
    }
    sections.push_back(s);
  }

  std::vector<double> cm_grid;
  for (int i = 0; i <= 18; ++i) cm_grid.push_back(0.5 + 0.25 * i);
  for (int n : {1, 2})
    for (double a : {-2.0, 0.0, 2.0}) {
      const auto p = det_cm_probe(a, n, cm_grid, 2, cfg, o.tol);
      Section s{"det_cm", "n=" + std::to_string(n) + ";alpha=" + format_double(a)};
      for (const auto& v : p.steps) {
        ++s.checks;
        if (!v.holds) ++s.failures;
        s.min_margin = std::min(s.min_margin, v.margin);
      }
      sections.push_back(s);
    }

  bool passed = true;
  for (const auto& s : sections) passed = passed && s.failures == 0;
  const int code = passed ? kExitPass : kExitVerification;

  if (o.format == "csv") {
    std::string text = csv_join({"section", "name", "checks", "failures", "min_margin",
                                 "passed", "tolerance", "rel_tol", "grid", "oracle"});
    for (const auto& s : sections) {
      text += csv_join({s.section, s.name, std::to_string(s.checks),
                        std::to_string(s.failures), format_double(s.min_margin),
                        s.failures == 0 ? "true" : "false", format_double(o.tol),
                        format_double(cfg.rel_tol), o.grid, o.oracle});
    }
    return {text, code};
  }
  auto config = config_json(o, cfg);
  config["tolerance"] = o.tol;
  config["grid"] = grid_json(o.grid, grid);
  config["oracle"] = o.oracle;
  config["samples"] = o.samples;
  config["seed"] = o.seed;
  config["batch"] = o.batch;
  auto doc = document("report", std::move(config));
  doc["sections"] = Json::array();
  for (const auto& s : sections) {
    Json j;
    j["section"] = s.section;
    j["name"] = s.name;
    j["checks"] = s.checks;
    j["failures"] = s.failures;
    j["min_margin"] = s.min_margin;
    j["passed"] = s.failures == 0;
    doc["sections"].push_back(std::move(j));
  }
  doc["verify"] = sweep_json(report);
  doc["passed"] = passed;
  return {render(doc), code};
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--rel-tol", o.rel_tol, "Relative tolerance of the quadrature");
  sub->add_option("--max-refinements", o.max_refinements, "Quadrature level limit");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", o.out_path, "Write output to this file");
}

void add_x_options(CLI::App* sub, Options& o) {
  sub->add_option("--x", o.x, "Argument x");
  sub->add_option("--x-range", o.x_range, "Arithmetic x range start:stop:step");
  sub->add_option("--x-log-range", o.x_log_range, "Log-spaced x range start:stop:n");
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw DomainError("range must be start:stop:step, got '" + text + "'");
  const double start = parse_number(parts[0], "range start");
  const double stop = parse_number(parts[1], "range stop");
  const double step = parse_number(parts[2], "range step");
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw DomainError("range bounds must be finite");
  }
  if (!(step > 0.0)) throw DomainError("range step must be positive");
  if (stop < start) throw DomainError("range stop must not precede start");
  const double span = (stop - start) / step;
  if (span > 1e6) throw DomainError("range has too many points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

std::vector<double> parse_log_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw DomainError("log range must be start:stop:n, got '" + text + "'");
  const double start = parse_number(parts[0], "log range start");
  const double stop = parse_number(parts[1], "log range stop");
  const double n = parse_number(parts[2], "log range count");
  if (!(n >= 1.0) || n != std::floor(n) || n > 1e6) {
    throw DomainError("log range count must be a positive integer");
  }
  if (stop < start) throw DomainError("range stop must not precede start");
  return log_spaced(start, stop, static_cast<std::size_t>(n));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Evaluate Bickley functions and verify their inequalities", "bickley"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "Evaluate Ki_alpha(x)");
  eval->add_option("--alpha", o.alpha, "Order alpha")->required();
  eval->add_option("--x", o.x, "Argument x")->required();
  add_common(eval, o);

  auto* table = app.add_subcommand("table", "Tabulate Ki over alpha and x ranges");
  table->add_option("--alpha", o.alpha, "Order alpha");
  table->add_option("--alpha-range", o.alpha_range, "Alpha range start:stop:step");
  add_x_options(table, o);
  add_common(table, o);

  auto* verify = app.add_subcommand("verify", "Run inequality checks over a grid");
  verify->add_option("--suite", o.suite, "Comma-separated check names, or all");
  verify->add_option("--grid", o.grid, "Grid preset")
      ->check(CLI::IsMember({"tiny", "default", "dense"}));
  verify->add_option("--tol", o.tol, "Verdict tolerance");
  add_common(verify, o);

  auto* gram = app.add_subcommand("gram", "Gram-matrix positive semidefiniteness");
  gram->add_option("--alpha", o.alpha, "Order alpha (x mode)");
  gram->add_option("--alpha-range", o.alpha_range, "Orders start:stop:step (alpha mode)");
  add_x_options(gram, o);
  add_common(gram, o);

  auto* det = app.add_subcommand("det", "Hankel determinants against independent oracles");
  det->add_option("--alpha", o.alpha, "Top-left order alpha")->required();
  det->add_option("--n", o.n, "Matrix size parameter (size n+1)");
  add_x_options(det, o);
  det->add_option("--oracle", o.oracle, "Oracle")->check(CLI::IsMember({"quad", "mc"}));
  det->add_option("--samples", o.samples, "Monte-Carlo samples");
  det->add_option("--seed", o.seed, "Monte-Carlo seed");
  det->add_option("--batch", o.batch, "Monte-Carlo samples per batch");
  det->add_option("--order", o.order, "Highest difference order of the probe");
  det->add_option("--tol", o.tol, "Verdict tolerance");
  add_common(det, o);

  auto* report = app.add_subcommand("report", "Run the full verification battery");
  report->add_option("--grid", o.grid, "Grid preset")
      ->check(CLI::IsMember({"tiny", "default", "dense"}));
  report->add_option("--oracle", o.oracle, "Determinant oracle")
      ->check(CLI::IsMember({"quad", "mc"}));
  report->add_option("--samples", o.samples, "Monte-Carlo samples");
  report->add_option("--seed", o.seed, "Monte-Carlo seed");
  report->add_option("--batch", o.batch, "Monte-Carlo samples per batch");
  report->add_option("--tol", o.tol, "Verdict tolerance");
  add_common(report, o);

  std::vector<std::string> argv_storage{"bickley"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  Outcome result;
  try {
    if (*eval) {
      o.command = "eval";
      result = cmd_eval(o);
    } else if (*table) {
      o.command = "table";
      result = cmd_table(o);
    } else if (*verify) {
      o.command = "verify";
      result = cmd_verify(o);
    } else if (*gram) {
      o.command = "gram";
      result = cmd_gram(o);
    } else if (*det) {
      o.command = "det";
      result = cmd_det(o);
    } else {
      o.command = "report";
      result = cmd_report(o);
    }
  } catch (const ConvergenceError& e) {
    err << "bickley: convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::logic_error& e) {
    err << "bickley: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::range_error& e) {
    err << "bickley: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "bickley: internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  if (o.out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) {
      err << "bickley: cannot open '" << o.out_path << "' for writing\n";
      return kExitUsage;
    }
    file << result.text;
    if (!file) {
      err << "bickley: write to '" << o.out_path << "' failed\n";
      return kExitUsage;
    }
  }
  return result.code;
}

}  // namespace bickley::cli
