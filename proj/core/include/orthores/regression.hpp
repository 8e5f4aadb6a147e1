#pragma once

// Least-squares fits and "independent residuals": n - p linear combinations
// of the ordinary residuals that are i.i.d. N(0, sigma^2) under the Gaussian
// linear model and carry exactly the same sum of squares.

#include <cstddef>
#include <span>
#include <utility>

#include "orthores/dense_matrix.hpp"
#include "orthores/householder.hpp"
#include "orthores/orthocomp.hpp"

namespace orthores {

struct RegressionFit {
  DenseMatrix X{1, 1};
  Vector Y;
  Vector beta_hat;
  Vector residuals;
  double rss = 0.0;
};

struct IndependentResiduals {
  Vector W;
  /// Correction v = S R^(p) (length p).
  Vector v;
  /// beta_hat - v; W_j = Y_j - x_j . beta_star on the complement rows.
  Vector beta_star;
  RowSelection selection = RowSelection::first(0);
};

/// Predictor rescaled to sum 0 and sum of squares 1: t = (raw - shift) / scale.
struct StandardizedPredictor {
  Vector t;
  double shift = 0.0;
  double scale = 1.0;
};

enum class StudentVariant { Minus, Plus };
enum class UnivariateVariant { A, B };

/// Threshold on |(sqrt(n)-1)(1-t_2) - t_1| below which variant A switches to
/// its rank-one branch.
inline constexpr double kUnivariateSingularTol = 1e-10;

/// Least squares through the standard-sign Householder QR.
RegressionFit fit_least_squares(const DenseMatrix& X, std::span<const double> Y);
/// Same, reusing an existing standard-sign factorization of X.
RegressionFit fit_least_squares(const HouseholderQR& qr, const DenseMatrix& X,
                                std::span<const double> Y);

/// W = R_(p) + X_(p) v with v = S R^(p). `sp` must have been built for the
/// same X and selection.
IndependentResiduals independent_residuals(const RegressionFit& fit, const SProjector& sp,
                                           const RowSelection& sel);
IndependentResiduals independent_residuals(const RegressionFit& fit, const SProjector& sp);

/// Location-only model (X = ones). W_j = R_{j+1} + c R_1 with
/// c = -1/(sqrt(n)+1) (Minus) or 1/(sqrt(n)-1) (Plus). beta_star holds the
/// adjusted mean mu*.
IndependentResiduals student_w(std::span<const double> Y, StudentVariant variant = StudentVariant::Minus);

/// The two admissible coefficients c for the location model.
double student_coefficient(std::size_t n, StudentVariant variant);

/// Intercept-and-slope model on a standardized predictor. beta_star holds
/// (a*, b*) in the t scale.
IndependentResiduals univariate_w(const StandardizedPredictor& t, std::span<const double> Y,
                                  UnivariateVariant variant = UnivariateVariant::B);

/// The 2x2 coefficient block [[A, B], [C, D]] used by univariate_w.
DenseMatrix univariate_coefficients(std::span<const double> t, UnivariateVariant variant);

StandardizedPredictor standardize_predictor(std::span<const double> raw);

/// Converts (a, b) on the standardized scale back to raw-predictor units
/// (intercept, slope).
std::pair<double, double> to_raw_units(const StandardizedPredictor& t, double a, double b);

}  // namespace orthores
