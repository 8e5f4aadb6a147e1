#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cli/dataset.hpp"
#include "orthores/errors.hpp"
#include "orthores/householder.hpp"
#include "orthores/orthocomp.hpp"
#include "orthores/random.hpp"
#include "orthores/regression.hpp"
#include "orthores/validation.hpp"

#ifndef ORTHORES_VERSION
#define ORTHORES_VERSION "0.0.0"
#endif

namespace orthores::cli {

using nlohmann::json;

nlohmann::json RunManifest::to_json() const {
  json j;
  j["subcommand"] = subcommand;
  j["input"] = input ? json(*input) : json(nullptr);
  j["selection"] = selection ? json(*selection) : json(nullptr);
  j["variants"] = variants;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["output"] = output;
  j["version"] = version;
  return j;
}

nlohmann::json to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

std::string tool_version() { return ORTHORES_VERSION; }

std::uint64_t seed_from_environment() {
  const char* raw = std::getenv("ORTHORES_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  const std::string s(raw);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 20) {
    throw InputError("ORTHORES_SEED must be an unsigned integer, got '" + s + "'");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw InputError("ORTHORES_SEED out of range: '" + s + "'");
  }
}

namespace {

// An emitted document together with the exit code it should produce.
struct Outcome {
  json doc;
  int code = kExitOk;
  std::string message;
};

class IdentityFailure : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

struct CommonOptions {
  std::string out = "-";
  double tol = 1e-10;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, CommonOptions& c, bool with_seed) {
  sub->add_option("--out", c.out, "Write the JSON document here instead of stdout");
  sub->add_option("--tol", c.tol, "Tolerance for internal checks")->check(CLI::PositiveNumber);
  if (with_seed) sub->add_option("--seed", c.seed, "RNG seed (default: $ORTHORES_SEED, else 0)");
}

std::uint64_t resolve_seed(const CommonOptions& c) { return c.seed ? *c.seed : seed_from_environment(); }

// ---- design assembly ----

struct Design {
  std::string mode;
  DenseMatrix X{1, 1};
  Vector Y;
  Vector t_raw;  // univariate only
};

DenseMatrix intercept_and(const Vector& t) {
  DenseMatrix X(t.size(), 2, 1.0);
  for (std::size_t i = 0; i < t.size(); ++i) X(i, 1) = t[i];
  return X;
}

Design build_design(const Dataset& ds, const std::string& requested) {
  Design d;
  d.mode = requested == "auto" ? (ds.cols() == 1 ? "student" : "general") : requested;
  if (d.mode == "student") {
    if (ds.cols() != 1) throw InputError("student mode expects a single column [y], got " + std::to_string(ds.cols()));
    d.X = DenseMatrix(ds.rows(), 1, 1.0);
    d.Y = ds.columns[0];
  } else if (d.mode == "univariate") {
    if (ds.cols() != 2) throw InputError("univariate mode expects columns [t, y], got " + std::to_string(ds.cols()));
    d.t_raw = ds.columns[0];
    d.X = intercept_and(d.t_raw);
    d.Y = ds.columns[1];
  } else if (d.mode == "general") {
    if (ds.cols() < 2) throw InputError("general mode expects columns [x1..xp, y], got " + std::to_string(ds.cols()));
    d.X = column_block(ds, 0, ds.cols() - 1);
    d.Y = ds.columns.back();
  } else {
    throw InputError("unknown mode '" + requested + "'");
  }
  if (ds.rows() < d.X.cols() + 1) {
    throw InputError("need at least p + 1 = " + std::to_string(d.X.cols() + 1) + " data rows, got " +
                     std::to_string(ds.rows()));
  }
  return d;
}

SignPolicy parse_policy(const std::string& name, const std::vector<int>& signs) {
  if (name == "standard") return SignPolicy::standard();
  if (name == "positive") return SignPolicy::to_positive();
  if (name == "custom") {
    if (signs.empty()) throw InputError("--policy custom requires --signs");
    return SignPolicy::custom(signs);
  }
  throw InputError("unknown policy '" + name + "' (expected standard, positive or custom)");
}

double relative_gap(double a, double b) {
  return b > 0.0 ? std::abs(a - b) / b : std::abs(a - b);
}

// ---- qr ----

struct QrOptions {
  CommonOptions common;
  std::string input;
  std::string mode = "design";
  std::string policy = "standard";
  std::vector<int> signs;
};

Outcome cmd_qr(const QrOptions& o, RunManifest& m) {
  m.input = o.input;
  m.variants["mode"] = o.mode;
  m.variants["policy"] = o.policy;
  const Dataset ds = read_csv(o.input);

  DenseMatrix X{1, 1};
  if (o.mode == "design") {
    X = column_block(ds, 0, ds.cols());
  } else {
    X = build_design(ds, o.mode).X;
  }
  const HouseholderQR qr = householder_qr(X, parse_policy(o.policy, o.signs));

  std::vector<double> norms;
  for (double s : qr.reflector_sq_norms) norms.push_back(std::sqrt(s));
  json doc;
  doc["n"] = qr.n;
  doc["p"] = qr.p;
  doc["T"] = to_json(qr.T);
  doc["signs"] = qr.signs;
  doc["reflector_norms"] = norms;
  doc["rank_count"] = rank_count(qr, X);
  return Outcome{doc, kExitOk, {}};
}

// ---- residuals ----

struct ResidualsOptions {
  CommonOptions common;
  std::string input;
  std::string mode = "auto";
};

Outcome cmd_residuals(const ResidualsOptions& o, RunManifest& m) {
  m.input = o.input;
  const Design d = build_design(read_csv(o.input), o.mode);
  m.variants["mode"] = d.mode;
  const RegressionFit fit = fit_least_squares(d.X, d.Y);
  json doc;
  doc["n"] = d.X.rows();
  doc["p"] = d.X.cols();
  doc["beta_hat"] = fit.beta_hat;
  doc["R"] = fit.residuals;
  doc["rss"] = fit.rss;
  return Outcome{doc, kExitOk, {}};
}

// ---- indep ----

struct IndepOptions {
  CommonOptions common;
  std::string input;
  std::string mode = "auto";
  std::string variant;
  std::string policy = "standard";
  std::vector<std::size_t> rows;
  bool inject_fault = false;
};

Outcome cmd_indep(const IndepOptions& o, RunManifest& m) {
  m.input = o.input;
  const Design d = build_design(read_csv(o.input), o.mode);
  const std::size_t p = d.X.cols();
  m.variants["mode"] = d.mode;

  const RowSelection sel = o.rows.empty() ? RowSelection::first(p) : RowSelection(o.rows);
  if (sel.size() != p) {
    throw InputError("--rows must name exactly p = " + std::to_string(p) + " rows");
  }
  sel.validate(d.X.rows(), p);
  m.selection = sel.indices();
  if (d.mode != "general" && !sel.is_leading()) {
    throw InputError("--rows is only supported in general mode");
  }

  const RegressionFit fit = fit_least_squares(d.X, d.Y);
  IndependentResiduals ir;
  json extra = json::object();
  if (d.mode == "student") {
    const std::string v = o.variant.empty() ? "minus" : o.variant;
    if (v != "minus" && v != "plus") throw InputError("student variant must be minus or plus, got '" + v + "'");
    m.variants["variant"] = v;
    ir = student_w(d.Y, v == "minus" ? StudentVariant::Minus : StudentVariant::Plus);
  } else if (d.mode == "univariate") {
    const std::string v = o.variant.empty() ? "b" : o.variant;
    if (v != "a" && v != "b") throw InputError("univariate variant must be a or b, got '" + v + "'");
    m.variants["variant"] = v;
    const StandardizedPredictor tp = standardize_predictor(d.t_raw);
    ir = univariate_w(tp, d.Y, v == "a" ? UnivariateVariant::A : UnivariateVariant::B);
    const auto [a_raw, b_raw] = to_raw_units(tp, ir.beta_star[0], ir.beta_star[1]);
    extra["beta_star_raw"] = {a_raw, b_raw};
    extra["standardization"] = {{"shift", tp.shift}, {"scale", tp.scale}};
  } else {
    if (!o.variant.empty()) throw InputError("general mode takes --policy, not --variant");
    m.variants["policy"] = o.policy;
    const HouseholderQR qr = factor_selected(d.X, sel, parse_policy(o.policy, {}));
    ir = independent_residuals(fit, s_from_qr(qr, d.X, sel), sel);
  }

  if (o.inject_fault && !ir.W.empty()) ir.W[0] += 1.0;
  const double wss = dot(ir.W, ir.W);
  const double gap = relative_gap(wss, fit.rss);
  if (!(gap <= o.common.tol)) {
    throw IdentityFailure("sum of squares of W (" + std::to_string(wss) + ") differs from rss (" +
                          std::to_string(fit.rss) + "), relative gap " + std::to_string(gap));
  }

  json doc = extra;
  doc["n"] = d.X.rows();
  doc["p"] = p;
  doc["beta_hat"] = fit.beta_hat;
  doc["W"] = ir.W;
  doc["v"] = ir.v;
  doc["beta_star"] = ir.beta_star;
  doc["rss"] = fit.rss;
  doc["wss"] = wss;
  return Outcome{doc, kExitOk, {}};
}

// ---- simulate ----

struct SimulateOptions {
  CommonOptions common;
  SimulationConfig cfg;
  std::string construction = "generic";
};

Outcome cmd_simulate(SimulateOptions o, RunManifest& m) {
  try {
    o.cfg.construction = construction_from_string(o.construction);
  } catch (const InvalidArgument& e) {
    throw InputError(e.what());
  }
  o.cfg.seed = resolve_seed(o.common);
  m.seed = o.cfg.seed;
  m.variants["construction"] = o.construction;
  try {
    o.cfg.validate();
  } catch (const InvalidArgument& e) {
    throw InputError(e.what());
  }

  const SimulationReport r = monte_carlo(o.cfg);
  json doc;
  doc["n"] = r.n;
  doc["p"] = r.p;
  doc["sigma"] = o.cfg.sigma;
  doc["replicates"] = r.replicates;
  doc["mean_W"] = r.mean_W;
  doc["cov_W"] = to_json(r.cov_W);
  doc["mean_rss_over_sigma2"] = r.mean_rss_over_sigma2;
  doc["var_rss_over_sigma2"] = r.var_rss_over_sigma2;
  doc["max_ss_identity_error"] = r.max_ss_identity_error;
  doc["cov_R"] = to_json(r.cov_R);
  doc["expected_cov_R"] = to_json(r.expected_cov_R);
  return Outcome{doc, kExitOk, {}};
}

// ---- check ----

struct CheckOptions {
  CommonOptions common;
  std::vector<std::size_t> n_grid{5, 20, 100};
  std::size_t trials = 100;
  std::string inject_fault;
};

// First p columns of H_1 ... H_p for a random n x p matrix: orthonormal.
DenseMatrix random_orthonormal(std::size_t n, std::size_t p, NormalSource& rng) {
  const HouseholderQR qr = householder_qr(rng.matrix(n, p));
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < p; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    cols.push_back(apply_Q(qr, e));
  }
  return DenseMatrix::from_columns(cols);
}

Outcome cmd_check(const CheckOptions& o, RunManifest& m) {
  static const std::vector<std::string> kChecks{"oracle", "student_roots", "s_condition", "cheng", "idempotency"};
  if (!o.inject_fault.empty() && std::find(kChecks.begin(), kChecks.end(), o.inject_fault) == kChecks.end()) {
    throw InputError("unknown check '" + o.inject_fault + "'");
  }
  if (o.n_grid.empty()) throw InputError("--n-grid must not be empty");
  for (std::size_t n : o.n_grid) {
    if (n < 2) throw InputError("--n-grid entries must be >= 2");
  }
  const std::uint64_t seed = resolve_seed(o.common);
  m.seed = seed;
  m.variants["n_grid"] = o.n_grid;
  m.variants["trials"] = o.trials;
  if (!o.inject_fault.empty()) m.variants["inject_fault"] = o.inject_fault;
  const bool fault = !o.inject_fault.empty();
  const double tol = o.common.tol;

  // Orthocomplement formula against the materialized basis.
  double oracle_max = 0.0;
  json oracle_per_n = json::object();
  for (std::size_t n : o.n_grid) {
    NormalSource rng(mix_seed(seed + n));
    const std::size_t p = std::min<std::size_t>(5, n - 1);
    double err = oracle_compare(rng.matrix(n, p), o.trials, seed + n);
    err = std::max(err, oracle_compare(DenseMatrix(n, 1, 1.0), o.trials, seed + 2 * n));
    oracle_per_n[std::to_string(n)] = err;
    oracle_max = std::max(oracle_max, err);
  }
  if (fault && o.inject_fault == "oracle") oracle_max += 1.0;
  const bool oracle_pass = oracle_max < tol;

  // Location-model coefficients against the quadratic.
  const std::size_t n_max = *std::max_element(o.n_grid.begin(), o.n_grid.end());
  double roots_err = 0.0;
  bool roots_pass = true;
  for (std::size_t n = 2; n <= n_max; ++n) {
    try {
      const StudentRoots r = verify_student_roots(n);
      const double rn = std::sqrt(static_cast<double>(n));
      roots_err = std::max({roots_err, std::abs(r.c_plus - 1.0 / (rn - 1.0)), std::abs(r.c_minus + 1.0 / (rn + 1.0))});
    } catch (const InvariantViolation&) {
      roots_pass = false;
    }
  }
  if (fault && o.inject_fault == "student_roots") roots_pass = false;

  // The S condition for orthogonal normalizers, and its failure when perturbed.
  bool s_pass = true;
  double s_residual = 0.0;
  for (std::size_t n : o.n_grid) {
    NormalSource rng(mix_seed(seed ^ (n * 0x51ED27ULL)));
    const std::size_t p = std::min<std::size_t>(3, n - 1);
    const DenseMatrix Xo = random_orthonormal(n, p, rng);
    const DenseMatrix Q = random_orthonormal(p, p, rng);
    const DenseMatrix S = s_from_c(Xo, Q).S;
    const RowSelection sel = RowSelection::first(p);
    s_residual = std::max(s_residual, s_condition_residual(S, Xo, sel));
    s_pass = s_pass && verify_s_condition(S, Xo, sel);
    s_pass = s_pass && !verify_s_condition(S + 0.1 * rng.matrix(p, p), Xo, sel);
  }
  if (fault && o.inject_fault == "s_condition") s_pass = false;

  // Cheng's factor of the centering matrix.
  double cheng_err = 0.0;
  for (std::size_t n : o.n_grid) {
    const ChengFactorization f = cheng_matrix(n);
    cheng_err = std::max(cheng_err, max_abs_diff(f.M.transpose() * f.M, DenseMatrix::identity(n - 1)));
    cheng_err = std::max(cheng_err, max_abs(transpose_times(f.M, Vector(n, 1.0))));
  }
  if (fault && o.inject_fault == "cheng") cheng_err += 1.0;
  const bool cheng_pass = cheng_err < tol;

  bool idem_pass = true;
  for (std::size_t n : o.n_grid) {
    NormalSource rng(mix_seed(seed + 7 * n));
    const DenseMatrix Xo = random_orthonormal(n, std::min<std::size_t>(3, n - 1), rng);
    try {
      idem_pass = idem_pass && idempotent_check(DenseMatrix::identity(n) - Xo * Xo.transpose());
      idem_pass = idem_pass && idempotent_check((1.0 / static_cast<double>(n)) * DenseMatrix(n, n, 1.0));
      idem_pass = idem_pass && !idempotent_check(2.0 * DenseMatrix::identity(n));
    } catch (const InvariantViolation&) {
      idem_pass = false;
    }
  }
  if (fault && o.inject_fault == "idempotency") idem_pass = false;

  std::vector<std::string> failed;
  if (!oracle_pass) failed.push_back("oracle");
  if (!roots_pass) failed.push_back("student_roots");
  if (!s_pass) failed.push_back("s_condition");
  if (!cheng_pass) failed.push_back("cheng");
  if (!idem_pass) failed.push_back("idempotency");

  json doc;
  doc["oracle_max_error"] = oracle_max;
  doc["oracle_errors"] = oracle_per_n;
  doc["student_roots"] = {{"pass", roots_pass}, {"n_range", {2, n_max}}, {"max_error", roots_err}};
  doc["s_condition_pass"] = s_pass;
  doc["s_condition_max_residual"] = s_residual;
  doc["cheng_orthonormality_error"] = cheng_err;
  doc["idempotency_pass"] = idem_pass;
  doc["failed"] = failed;
  doc["pass"] = failed.empty();

  Outcome out{doc, kExitOk, {}};
  if (!failed.empty()) {
    out.code = kExitCheckFailure;
    std::string names;
    for (const auto& f : failed) names += (names.empty() ? "" : ", ") + f;
    out.message = "check failed: " + names;
  }
  return out;
}

// ---- bench ----

struct BenchOptions {
  CommonOptions common;
  std::vector<std::size_t> n_grid{250, 500, 1000};
  std::size_t p = 5;
  std::size_t repeats = 3;
  std::string format = "json";
};

Outcome cmd_bench(const BenchOptions& o, RunManifest& m, std::string& csv) {
  const std::uint64_t seed = resolve_seed(o.common);
  m.seed = seed;
  m.variants["n_grid"] = o.n_grid;
  m.variants["p"] = o.p;
  m.variants["repeats"] = o.repeats;
  std::vector<BenchmarkTiming> rows;
  try {
    rows = benchmark_apply(o.n_grid, o.p, o.repeats, seed);
  } catch (const InvalidArgument& e) {
    throw InputError(e.what());
  }

  json table = json::array();
  std::map<std::string, std::pair<double, double>> first_last;
  double worst = 0.0;
  std::ostringstream c;
  c << "method,n,seconds,max_disagreement\n";
  c.precision(17);
  for (const auto& r : rows) {
    table.push_back({{"method", r.method}, {"n", r.n}, {"seconds", r.seconds}, {"max_disagreement", r.max_disagreement}});
    auto [it, inserted] = first_last.try_emplace(r.method, r.seconds, r.seconds);
    if (!inserted) it->second.second = r.seconds;
    worst = std::max(worst, r.max_disagreement);
    c << r.method << ',' << r.n << ',' << r.seconds << ',' << r.max_disagreement << '\n';
  }
  json ratios = json::object();
  for (const auto& [method, fl] : first_last) ratios[method] = fl.second / fl.first;

  json doc;
  doc["timings"] = table;
  doc["growth_ratio"] = ratios;
  doc["max_disagreement"] = worst;
  csv = c.str();

  Outcome out{doc, kExitOk, {}};
  if (!(worst <= o.common.tol)) {
    out.code = kExitIdentityViolation;
    out.message = "bench: methods disagree by " + std::to_string(worst);
  }
  return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (!f) throw InputError("failed writing '" + path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Independent residuals via Householder reflections", "orthores"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  QrOptions qr;
  auto* qr_cmd = app.add_subcommand("qr", "Householder QR of the design columns");
  qr_cmd->add_option("input", qr.input, "CSV file")->required();
  qr_cmd->add_option("--mode", qr.mode, "design (all columns) | general | student | univariate")
      ->check(CLI::IsMember({"design", "general", "student", "univariate"}));
  qr_cmd->add_option("--policy", qr.policy, "standard | positive | custom");
  qr_cmd->add_option("--signs", qr.signs, "Per-step signs for --policy custom")->delimiter(',');
  add_common(qr_cmd, qr.common, false);

  ResidualsOptions res;
  auto* res_cmd = app.add_subcommand("residuals", "Least-squares fit and ordinary residuals");
  res_cmd->add_option("input", res.input, "CSV file")->required();
  res_cmd->add_option("--mode", res.mode, "auto | student | univariate | general");
  add_common(res_cmd, res.common, false);

  IndepOptions ind;
  auto* ind_cmd = app.add_subcommand("indep", "Independent residuals W");
  ind_cmd->add_option("input", ind.input, "CSV file")->required();
  ind_cmd->add_option("--mode", ind.mode, "auto | student | univariate | general");
  ind_cmd->add_option("--variant", ind.variant, "minus|plus (student), a|b (univariate)");
  ind_cmd->add_option("--policy", ind.policy, "standard | positive (general mode)");
  ind_cmd->add_option("--rows", ind.rows, "0-based rows playing the role of the first p")->delimiter(',');
  ind_cmd->add_flag("--inject-fault", ind.inject_fault)->group("");
  add_common(ind_cmd, ind.common, false);

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo moments of W and the residual sum of squares");
  sim_cmd->add_option("--n", sim.cfg.n, "Observations");
  sim_cmd->add_option("--p", sim.cfg.p, "Regressors (intercept included)");
  sim_cmd->add_option("--sigma", sim.cfg.sigma, "Noise standard deviation");
  sim_cmd->add_option("--reps", sim.cfg.replicates, "Replicates");
  sim_cmd->add_option("--beta", sim.cfg.beta, "Coefficients (default all ones)")->delimiter(',');
  sim_cmd->add_option("--construction", sim.construction,
                      "generic | student-minus | student-plus | univariate-a | univariate-b");
  add_common(sim_cmd, sim.common, true);

  CheckOptions chk;
  auto* chk_cmd = app.add_subcommand("check", "Self-checks against brute-force references");
  chk_cmd->add_option("--n-grid", chk.n_grid, "Sizes, comma separated")->delimiter(',');
  chk_cmd->add_option("--trials", chk.trials, "Random vectors per oracle comparison");
  chk_cmd->add_option("--inject-fault", chk.inject_fault)->group("");
  add_common(chk_cmd, chk.common, true);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time explicit basis vs reflections vs closed formula");
  bench_cmd->add_option("--n-grid", bench.n_grid, "Sizes, ascending, comma separated")->delimiter(',');
  bench_cmd->add_option("--p", bench.p, "Columns");
  bench_cmd->add_option("--repeats", bench.repeats, "Timing batches per method (best is kept)");
  bench_cmd->add_option("--format", bench.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  add_common(bench_cmd, bench.common, true);

  std::vector<const char*> argv{"orthores"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  RunManifest manifest;
  manifest.version = tool_version();
  try {
    Outcome result;
    std::string csv;
    std::string out_path = "-";
    bool as_csv = false;
    if (qr_cmd->parsed()) {
      manifest.subcommand = "qr";
      out_path = qr.common.out;
      result = cmd_qr(qr, manifest);
    } else if (res_cmd->parsed()) {
      manifest.subcommand = "residuals";
      out_path = res.common.out;
      result = cmd_residuals(res, manifest);
    } else if (ind_cmd->parsed()) {
      manifest.subcommand = "indep";
      out_path = ind.common.out;
      result = cmd_indep(ind, manifest);
    } else if (sim_cmd->parsed()) {
      manifest.subcommand = "simulate";
      out_path = sim.common.out;
      result = cmd_simulate(sim, manifest);
    } else if (chk_cmd->parsed()) {
      manifest.subcommand = "check";
      out_path = chk.common.out;
      result = cmd_check(chk, manifest);
    } else {
      manifest.subcommand = "bench";
      out_path = bench.common.out;
      result = cmd_bench(bench, manifest, csv);
      as_csv = bench.format == "csv";
    }
    manifest.output = out_path;
    result.doc["manifest"] = manifest.to_json();
    if (as_csv) {
      emit("# manifest: " + manifest.to_json().dump() + "\n" + csv, out_path, out);
    } else {
      emit(result.doc.dump(2) + "\n", out_path, out);
    }
    if (!result.message.empty()) err << "orthores: " << result.message << '\n';
    return result.code;
  } catch (const InputError& e) {
    err << "orthores: input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const RankDeficiencyError& e) {
    err << "orthores: rank deficiency: " << e.what() << '\n';
    return kExitRankDeficiency;
  } catch (const SingularMatrixError& e) {
    err << "orthores: rank deficiency: " << e.what() << '\n';
    return kExitRankDeficiency;
  } catch (const InvariantViolation& e) {
    err << "orthores: identity violation: " << e.what() << '\n';
    return kExitIdentityViolation;
  } catch (const InvalidArgument& e) {
    err << "orthores: input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DimensionError& e) {
    err << "orthores: input error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace orthores::cli
