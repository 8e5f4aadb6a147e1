#include "orthores/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "orthores/errors.hpp"
#include "orthores/householder.hpp"
#include "orthores/random.hpp"
#include "orthores/regression.hpp"

namespace orthores {

StudentRoots verify_student_roots(std::size_t n) {
  if (n < 2) throw InvalidArgument("verify_student_roots: requires n >= 2");
  // (n-1)c^2 - 2c - 1 = 0, solved in the cancellation-free form.
  const double a = static_cast<double>(n - 1);
  const double b = -2.0;
  const double c = -1.0;
  const double q = -0.5 * (b - std::sqrt(b * b - 4.0 * a * c));
  const double r1 = q / a;
  const double r2 = c / q;

  const double rn = std::sqrt(static_cast<double>(n));
  StudentRoots roots{std::max(r1, r2), std::min(r1, r2)};
  const double err = std::max(std::abs(roots.c_plus - 1.0 / (rn - 1.0)),
                              std::abs(roots.c_minus + 1.0 / (rn + 1.0)));
  if (!(err <= 1e-12)) {
    throw InvariantViolation("verify_student_roots: closed forms differ from quadratic roots by " +
                             std::to_string(err));
  }
  return roots;
}

double s_condition_residual(const DenseMatrix& S, const DenseMatrix& Xortho, const RowSelection& sel) {
  const std::size_t p = Xortho.cols();
  if (S.rows() != p || S.cols() != p) throw DimensionError("s_condition_residual: S must be p x p");
  const DenseMatrix P = permute_rows(Xortho, sel).top_rows(p);
  const DenseMatrix I = DenseMatrix::identity(p);
  const DenseMatrix St = S.transpose();
  const DenseMatrix lhs = St * (I - P.transpose() * P) * S - P * S - St * P.transpose();
  return max_abs_diff(lhs, I);
}

bool verify_s_condition(const DenseMatrix& S, const DenseMatrix& Xortho, const RowSelection& sel) {
  return s_condition_residual(S, Xortho, sel) <= 1e-9;
}

bool verify_s_condition(const DenseMatrix& S, const DenseMatrix& Xortho) {
  return verify_s_condition(S, Xortho, RowSelection::first(Xortho.cols()));
}

ChengFactorization cheng_matrix(std::size_t n) {
  if (n < 2) throw InvalidArgument("cheng_matrix: requires n >= 2");
  const double inv_n = 1.0 / static_cast<double>(n);
  DenseMatrix A(n, n, -inv_n);
  for (std::size_t i = 0; i < n; ++i) A(i, i) = 1.0 - inv_n;

  const std::size_t r = n - 1;
  DenseMatrix L(n, r);
  Vector D(r);
  for (std::size_t k = 0; k < r; ++k) {
    const double pivot = A(k, k);
    D[k] = pivot;
    L(k, k) = 1.0;
    for (std::size_t i = k + 1; i < n; ++i) L(i, k) = A(i, k) / pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double lik = L(i, k);
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= lik * A(k, j);
    }
  }
  // Rank n - 1: the last pivot must vanish.
  if (!(std::abs(A(n - 1, n - 1)) < 1e-10)) {
    throw InvariantViolation("cheng_matrix: trailing pivot is not zero");
  }

  DenseMatrix M = L;
  for (std::size_t j = 0; j < r; ++j) {
    const double s = std::sqrt(D[j]);
    for (std::size_t i = 0; i < n; ++i) M(i, j) *= s;
  }
  return ChengFactorization{std::move(L), std::move(D), std::move(M)};
}

bool idempotent_check(const DenseMatrix& B) {
  if (B.rows() != B.cols()) throw DimensionError("idempotent_check: matrix is not square");
  if (!(max_abs_diff(B, B.transpose()) <= 1e-10)) {
    throw InvalidArgument("idempotent_check: matrix is not symmetric");
  }
  const std::size_t n = B.rows();
  const bool squares_to_itself = max_abs_diff(B * B, B) <= 1e-10;
  const bool ranks_add_up =
      numerical_rank(B, kRankTol) + numerical_rank(DenseMatrix::identity(n) - B, kRankTol) == n;
  if (squares_to_itself != ranks_add_up) {
    throw InvariantViolation("idempotent_check: B^2 = B and rank(B) + rank(I - B) = n disagree");
  }
  return squares_to_itself;
}

double oracle_compare(const DenseMatrix& X, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) return 0.0;
  const HouseholderQR qr = householder_qr(X, SignPolicy::standard());
  const SProjector sp = s_from_qr(qr, X);
  const DenseMatrix U2 = explicit_orthocomplement_basis(qr);

  NormalSource rng(mix_seed(seed));
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    // Project a Gaussian vector onto col(X)^perp through the factorization.
    Vector y = apply_Qt(qr, rng.vector(X.rows()));
    std::fill(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(X.cols()), 0.0);
    const Vector x = apply_Q(qr, y);
    worst = std::max(worst, max_abs_diff(orthocomplement_apply(sp, X, x), transpose_times(U2, x)));
  }
  return worst;
}

std::string to_string(Construction c) {
  switch (c) {
    case Construction::Generic: return "generic";
    case Construction::StudentMinus: return "student-minus";
    case Construction::StudentPlus: return "student-plus";
    case Construction::UnivariateA: return "univariate-a";
    case Construction::UnivariateB: return "univariate-b";
  }
  return "generic";
}

Construction construction_from_string(const std::string& name) {
  for (Construction c : {Construction::Generic, Construction::StudentMinus, Construction::StudentPlus,
                         Construction::UnivariateA, Construction::UnivariateB}) {
    if (to_string(c) == name) return c;
  }
  throw InvalidArgument("unknown construction '" + name + "'");
}

void SimulationConfig::validate() const {
  if (replicates < 1) throw InvalidArgument("simulation: replicates must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("simulation: sigma must be > 0");
  if (p < 1) throw InvalidArgument("simulation: p must be >= 1");
  if (p >= n) throw InvalidArgument("simulation: p < n required");
  if (!beta.empty() && beta.size() != p) throw InvalidArgument("simulation: beta must have length p");
  switch (construction) {
    case Construction::StudentMinus:
    case Construction::StudentPlus:
      if (p != 1) throw InvalidArgument("simulation: student constructions require p = 1");
      break;
    case Construction::UnivariateA:
    case Construction::UnivariateB:
      if (p != 2) throw InvalidArgument("simulation: univariate constructions require p = 2");
      if (n < 3) throw InvalidArgument("simulation: univariate constructions require n >= 3");
      break;
    case Construction::Generic:
      break;
  }
}

DenseMatrix simulation_design(const SimulationConfig& cfg) {
  cfg.validate();
  // Intercept column plus Gaussian regressors drawn from a stream separate
  // from the per-replicate noise.
  NormalSource rng(mix_seed(cfg.seed ^ 0x6A09E667F3BCC909ULL));
  DenseMatrix X(cfg.n, cfg.p);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    X(i, 0) = 1.0;
    for (std::size_t j = 1; j < cfg.p; ++j) X(i, j) = rng.next();
  }
  return X;
}

SimulationReport monte_carlo(const SimulationConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n;
  const std::size_t p = cfg.p;
  const std::size_t m = n - p;
  const Vector beta = cfg.beta.empty() ? Vector(p, 1.0) : cfg.beta;

  const DenseMatrix X = simulation_design(cfg);
  const HouseholderQR qr = householder_qr(X, SignPolicy::standard());
  const SProjector sp = s_from_qr(qr, X);
  const Vector mean_response = X * beta;
  StandardizedPredictor tp;
  if (cfg.construction == Construction::UnivariateA || cfg.construction == Construction::UnivariateB) {
    tp = standardize_predictor(X.column(1));
  }

  Vector sum_w(m, 0.0), sum_r(n, 0.0);
  DenseMatrix sum_ww(m, m), sum_rr(n, n);
  double sum_rss = 0.0, sum_rss2 = 0.0, worst = 0.0;
  const double s2 = cfg.sigma * cfg.sigma;

  for (std::size_t rep = 0; rep < cfg.replicates; ++rep) {
    NormalSource rng(mix_seed(cfg.seed + 0x9E3779B97F4A7C15ULL * (rep + 1)));
    Vector Y = mean_response;
    for (double& y : Y) y += cfg.sigma * rng.next();

    const RegressionFit fit = fit_least_squares(qr, X, Y);
    Vector W;
    switch (cfg.construction) {
      case Construction::Generic: W = independent_residuals(fit, sp).W; break;
      case Construction::StudentMinus: W = student_w(Y, StudentVariant::Minus).W; break;
      case Construction::StudentPlus: W = student_w(Y, StudentVariant::Plus).W; break;
      case Construction::UnivariateA: W = univariate_w(tp, Y, UnivariateVariant::A).W; break;
      case Construction::UnivariateB: W = univariate_w(tp, Y, UnivariateVariant::B).W; break;
    }

    const double wss = dot(W, W);
    if (fit.rss > 0.0) worst = std::max(worst, std::abs(wss - fit.rss) / fit.rss);

    const double scaled = fit.rss / s2;
    sum_rss += scaled;
    sum_rss2 += scaled * scaled;
    for (std::size_t i = 0; i < m; ++i) {
      sum_w[i] += W[i];
      for (std::size_t j = 0; j < m; ++j) sum_ww(i, j) += W[i] * W[j];
    }
    for (std::size_t i = 0; i < n; ++i) {
      sum_r[i] += fit.residuals[i];
      for (std::size_t j = 0; j < n; ++j) sum_rr(i, j) += fit.residuals[i] * fit.residuals[j];
    }
  }

  const double N = static_cast<double>(cfg.replicates);
  const double denom = cfg.replicates > 1 ? N - 1.0 : 1.0;
  SimulationReport rep;
  rep.n = n;
  rep.p = p;
  rep.replicates = cfg.replicates;
  rep.mean_W = scale(1.0 / N, sum_w);
  rep.cov_W = DenseMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      rep.cov_W(i, j) = cfg.replicates > 1
                            ? (sum_ww(i, j) - N * rep.mean_W[i] * rep.mean_W[j]) / denom / s2
                            : 0.0;
  rep.cov_R = DenseMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rep.cov_R(i, j) = cfg.replicates > 1
                            ? (sum_rr(i, j) - sum_r[i] * sum_r[j] / N) / denom / s2
                            : 0.0;
  rep.mean_rss_over_sigma2 = sum_rss / N;
  rep.var_rss_over_sigma2 =
      cfg.replicates > 1 ? (sum_rss2 - N * rep.mean_rss_over_sigma2 * rep.mean_rss_over_sigma2) / denom
                         : 0.0;
  rep.max_ss_identity_error = worst;

  const DenseMatrix Xt = X.transpose();
  rep.expected_cov_R = DenseMatrix::identity(n) - X * inverse(Xt * X) * Xt;
  return rep;
}

namespace {

using Clock = std::chrono::steady_clock;

// Best per-call time over `repeats` batches; each batch runs long enough to
// be well above timer resolution.
template <typename Fn>
double time_best(Fn&& fn, std::size_t repeats, double& sink) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < repeats; ++r) {
    std::size_t calls = 0;
    const auto start = Clock::now();
    double elapsed = 0.0;
    do {
      const Vector out = fn();
      sink += out.front();
      ++calls;
      elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    } while (elapsed < 2e-3);
    best = std::min(best, elapsed / static_cast<double>(calls));
  }
  return best;
}

}  // namespace

std::vector<BenchmarkTiming> benchmark_apply(const std::vector<std::size_t>& n_grid, std::size_t p,
                                             std::size_t repeats, std::uint64_t seed) {
  if (n_grid.empty()) throw InvalidArgument("benchmark_apply: empty n grid");
  if (!std::is_sorted(n_grid.begin(), n_grid.end()) ||
      std::adjacent_find(n_grid.begin(), n_grid.end()) != n_grid.end()) {
    throw InvalidArgument("benchmark_apply: n grid must be strictly ascending");
  }
  if (p < 1 || p >= n_grid.front()) throw InvalidArgument("benchmark_apply: requires 1 <= p < min(n)");
  if (repeats < 1) throw InvalidArgument("benchmark_apply: repeats must be >= 1");

  std::vector<BenchmarkTiming> rows;
  double sink = 0.0;
  for (std::size_t n : n_grid) {
    NormalSource rng(mix_seed(seed + n));
    const DenseMatrix X = rng.matrix(n, p);
    const HouseholderQR qr = householder_qr(X, SignPolicy::standard());
    const SProjector sp = s_from_qr(qr, X);
    Vector y = apply_Qt(qr, rng.vector(n));
    std::fill(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(p), 0.0);
    const Vector x = apply_Q(qr, y);

    const Vector fast = orthocomplement_apply(sp, X, x);
    Vector via_reflections = apply_Qt(qr, x);
    via_reflections.erase(via_reflections.begin(), via_reflections.begin() + static_cast<std::ptrdiff_t>(p));

    double explicit_seconds = 0.0;
    double gap = 0.0;
    {
      const DenseMatrix U2 = explicit_orthocomplement_basis(qr);
      const Vector reference = transpose_times(U2, x);
      gap = std::max(max_abs_diff(reference, fast), max_abs_diff(reference, via_reflections));
      explicit_seconds = time_best([&] { return transpose_times(U2, x); }, repeats, sink);
    }
    const double reflection_seconds = time_best(
        [&] {
          Vector out = apply_Qt(qr, x);
          return Vector(out.begin() + static_cast<std::ptrdiff_t>(p), out.end());
        },
        repeats, sink);
    const double closed_seconds = time_best([&] { return orthocomplement_apply(sp, X, x); }, repeats, sink);

    rows.push_back({"explicit_basis", n, explicit_seconds, gap});
    rows.push_back({"reflection_apply", n, reflection_seconds, gap});
    rows.push_back({"closed_formula", n, closed_seconds, gap});
  }
  if (!std::isfinite(sink)) throw InvariantViolation("benchmark_apply: non-finite output");
  return rows;
}

}  // namespace orthores
