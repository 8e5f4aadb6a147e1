#include "orthores/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "orthores/errors.hpp"

namespace orthores {

namespace {

double mean(std::span<const double> y) {
  return std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
}

double sum_squares(std::span<const double> y) { return dot(y, y); }

double max_column_norm(const DenseMatrix& X) {
  double m = 0.0;
  for (std::size_t j = 0; j < X.cols(); ++j) m = std::max(m, norm2(X.column(j)));
  return m;
}

}  // namespace

RegressionFit fit_least_squares(const HouseholderQR& qr, const DenseMatrix& X, std::span<const double> Y) {
  const std::size_t n = X.rows();
  const std::size_t p = X.cols();
  if (Y.size() != n) throw DimensionError("fit_least_squares: Y length does not match X rows");
  if (p >= n) throw DimensionError("fit_least_squares: requires p < n");
  if (qr.n != n || qr.p != p) throw DimensionError("fit_least_squares: factorization does not match X");

  // T beta = (G_p Y)^(p), solved by back substitution.
  const Vector z = apply_Qt(qr, Y);
  Vector beta(p);
  for (std::size_t i = p; i-- > 0;) {
    double s = z[i];
    for (std::size_t j = i + 1; j < p; ++j) s -= qr.T(i, j) * beta[j];
    beta[i] = s / qr.T(i, i);
  }

  Vector R = subtract(Y, X * beta);
  const double ortho = max_abs(transpose_times(X, R));
  if (!(ortho <= 1e-8 * std::max(norm2(Y), 1e-300) * std::max(1.0, max_column_norm(X)))) {
    throw InvariantViolation("fit_least_squares: residuals not orthogonal to col(X) (max |X^T R| = " +
                             std::to_string(ortho) + ")");
  }
  const double rss = sum_squares(R);
  return RegressionFit{X, Vector(Y.begin(), Y.end()), std::move(beta), std::move(R), rss};
}

RegressionFit fit_least_squares(const DenseMatrix& X, std::span<const double> Y) {
  if (X.cols() >= X.rows()) throw DimensionError("fit_least_squares: requires p < n");
  return fit_least_squares(householder_qr(X, SignPolicy::standard()), X, Y);
}

IndependentResiduals independent_residuals(const RegressionFit& fit, const SProjector& sp,
                                           const RowSelection& sel) {
  const std::size_t p = fit.X.cols();
  if (sp.p != p) throw DimensionError("independent_residuals: S is not p x p");
  sel.validate(fit.X.rows(), p);

  // fit_least_squares already checked X^T R against ||Y||.
  Vector W = orthocomplement_apply_unchecked(sp, fit.X, fit.residuals, sel);
  Vector r_head(p);
  for (std::size_t i = 0; i < p; ++i) r_head[i] = fit.residuals[sel.indices()[i]];
  Vector v = sp.S * r_head;
  Vector beta_star = subtract(fit.beta_hat, v);
  return IndependentResiduals{std::move(W), std::move(v), std::move(beta_star), sel};
}

IndependentResiduals independent_residuals(const RegressionFit& fit, const SProjector& sp) {
  return independent_residuals(fit, sp, RowSelection::first(fit.X.cols()));
}

double student_coefficient(std::size_t n, StudentVariant variant) {
  if (n < 2) throw InvalidArgument("student_coefficient: requires n >= 2");
  const double rn = std::sqrt(static_cast<double>(n));
  return variant == StudentVariant::Minus ? -1.0 / (rn + 1.0) : 1.0 / (rn - 1.0);
}

IndependentResiduals student_w(std::span<const double> Y, StudentVariant variant) {
  const std::size_t n = Y.size();
  if (n < 2) throw InvalidArgument("student_w: requires at least 2 observations");
  const double c = student_coefficient(n, variant);
  const double mu = mean(Y);

  Vector W(n - 1);
  const double r1 = Y[0] - mu;
  for (std::size_t j = 1; j < n; ++j) W[j - 1] = (Y[j] - mu) + c * r1;
  const double v = c * r1;
  return IndependentResiduals{std::move(W), Vector{v}, Vector{mu - v}, RowSelection::first(1)};
}

DenseMatrix univariate_coefficients(std::span<const double> t, UnivariateVariant variant) {
  if (t.size() < 3) throw InvalidArgument("univariate_coefficients: requires n >= 3");
  const double rn = std::sqrt(static_cast<double>(t.size()));
  const double t1 = t[0];
  const double t2 = t[1];

  if (variant == UnivariateVariant::A) {
    const double delta = (rn - 1.0) * (1.0 - t2) - t1;
    if (std::abs(delta) < kUnivariateSingularTol) {
      return (1.0 / (rn - 1.0)) * DenseMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    }
    return (1.0 / delta) * DenseMatrix::from_rows({{1.0 - t2, t1}, {1.0, rn - 1.0}});
  }

  const double h = (rn + 1.0) * t2 - t1;
  const double s = h < 0.0 ? -1.0 : 1.0;
  const double f = -s / ((rn + 1.0) + std::abs(h));
  return f * DenseMatrix::from_rows({{s + t2, -t1}, {-1.0, rn + 1.0}});
}

IndependentResiduals univariate_w(const StandardizedPredictor& tp, std::span<const double> Y,
                                  UnivariateVariant variant) {
  const auto& t = tp.t;
  const std::size_t n = t.size();
  if (n < 3) throw InvalidArgument("univariate_w: requires at least 3 observations");
  if (Y.size() != n) throw DimensionError("univariate_w: Y length does not match predictor");
  const double st = std::accumulate(t.begin(), t.end(), 0.0);
  if (std::abs(st) > 1e-10 || std::abs(dot(t, t) - 1.0) > 1e-10) {
    throw InvalidArgument("univariate_w: predictor is not standardized (sum 0, sum of squares 1)");
  }

  const double a_hat = mean(Y);
  const double b_hat = dot(t, Y);
  Vector R(n);
  for (std::size_t j = 0; j < n; ++j) R[j] = Y[j] - a_hat - b_hat * t[j];

  const DenseMatrix k = univariate_coefficients(t, variant);
  const double shift = k(0, 0) * R[0] + k(0, 1) * R[1];
  const double tilt = k(1, 0) * R[0] + k(1, 1) * R[1];

  Vector W(n - 2);
  for (std::size_t j = 2; j < n; ++j) W[j - 2] = R[j] + shift + tilt * t[j];
  return IndependentResiduals{std::move(W), Vector{shift, tilt},
                              Vector{a_hat - shift, b_hat - tilt}, RowSelection::first(2)};
}

StandardizedPredictor standardize_predictor(std::span<const double> raw) {
  const std::size_t n = raw.size();
  if (n < 2) throw InvalidArgument("standardize_predictor: requires at least 2 values");
  const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (std::abs(sum) < 1e-12 && std::abs(dot(raw, raw) - 1.0) < 1e-12) {
    return StandardizedPredictor{Vector(raw.begin(), raw.end()), 0.0, 1.0};
  }

  const double shift = sum / static_cast<double>(n);
  Vector t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = raw[j] - shift;
  const double scale = norm2(t);
  if (!(scale > 1e-12 * std::max(1.0, max_abs(raw)) * std::sqrt(static_cast<double>(n)))) {
    throw InvalidArgument("standardize_predictor: predictor is constant (collinear with the intercept)");
  }
  for (double& v : t) v /= scale;
  return StandardizedPredictor{std::move(t), shift, scale};
}

std::pair<double, double> to_raw_units(const StandardizedPredictor& t, double a, double b) {
  return {a - b * t.shift / t.scale, b / t.scale};
}

}  // namespace orthores
