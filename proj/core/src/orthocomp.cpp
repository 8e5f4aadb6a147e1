#include "orthores/orthocomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "orthores/errors.hpp"

namespace orthores {

namespace {

void require_orthonormal(const DenseMatrix& X, const char* op) {
  const DenseMatrix gram = X.transpose() * X;
  const double err = max_abs_diff(gram, DenseMatrix::identity(X.cols()));
  if (!(err < kOrthonormalityTol)) {
    throw InvalidArgument(std::string(op) + ": columns are not orthonormal (max |X^T X - I| = " +
                          std::to_string(err) + ")");
  }
}

double max_column_norm(const DenseMatrix& X) {
  double m = 0.0;
  for (std::size_t j = 0; j < X.cols(); ++j) m = std::max(m, norm2(X.column(j)));
  return m;
}

}  // namespace

RowSelection::RowSelection(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidArgument("RowSelection: duplicate row index");
  }
}

RowSelection RowSelection::first(std::size_t p) {
  std::vector<std::size_t> idx(p);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return RowSelection(std::move(idx));
}

bool RowSelection::is_leading() const noexcept {
  for (std::size_t i = 0; i < indices_.size(); ++i)
    if (indices_[i] != i) return false;
  return true;
}

void RowSelection::validate(std::size_t n, std::size_t p) const {
  if (indices_.size() != p) {
    throw DimensionError("RowSelection: selects " + std::to_string(indices_.size()) +
                         " rows, expected " + std::to_string(p));
  }
  if (!indices_.empty() && indices_.back() >= n) {
    throw DimensionError("RowSelection: row index " + std::to_string(indices_.back()) +
                         " out of range for " + std::to_string(n) + " rows");
  }
}

std::vector<std::size_t> RowSelection::complement(std::size_t n) const {
  std::vector<std::size_t> rest;
  rest.reserve(n - std::min(n, indices_.size()));
  std::size_t s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (s < indices_.size() && indices_[s] == i) {
      ++s;
    } else {
      rest.push_back(i);
    }
  }
  return rest;
}

std::vector<std::size_t> RowSelection::permutation(std::size_t n) const {
  std::vector<std::size_t> perm = indices_;
  const auto rest = complement(n);
  perm.insert(perm.end(), rest.begin(), rest.end());
  return perm;
}

DenseMatrix permute_rows(const DenseMatrix& X, const RowSelection& sel) {
  sel.validate(X.rows(), sel.size());
  if (sel.is_leading()) return X;
  const auto perm = sel.permutation(X.rows());
  DenseMatrix P(X.rows(), X.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    auto src = X.row(perm[i]);
    std::copy(src.begin(), src.end(), P.data().begin() + static_cast<std::ptrdiff_t>(i * X.cols()));
  }
  return P;
}

Vector permute(std::span<const double> x, const RowSelection& sel) {
  sel.validate(x.size(), sel.size());
  const auto perm = sel.permutation(x.size());
  Vector y(x.size());
  for (std::size_t i = 0; i < perm.size(); ++i) y[i] = x[perm[i]];
  return y;
}

HouseholderQR factor_selected(const DenseMatrix& X, const RowSelection& sel, const SignPolicy& policy) {
  sel.validate(X.rows(), X.cols());
  return householder_qr(permute_rows(X, sel), policy);
}

SProjector s_from_qr(const HouseholderQR& qr, const DenseMatrix& X, const RowSelection& sel) {
  const std::size_t p = X.cols();
  if (qr.n != X.rows() || qr.p != p) throw DimensionError("s_from_qr: factorization does not match X");
  if (p >= X.rows()) throw DimensionError("s_from_qr: requires p < n");
  sel.validate(X.rows(), p);

  const DenseMatrix diff = qr.T - permute_rows(X, sel).top_rows(p);
  const std::size_t r = numerical_rank(diff, kRankTol);
  if (r < p) {
    throw SingularMatrixError("s_from_qr: T - X^(p) is singular (rank " + std::to_string(r) +
                              " of " + std::to_string(p) +
                              "); use s_recursion/s_from_c or sign_fix");
  }
  return SProjector{p, inverse(diff, 0.0), p, qr.T, SProjector::Source::FromT};
}

SProjector s_from_qr(const HouseholderQR& qr, const DenseMatrix& X) {
  return s_from_qr(qr, X, RowSelection::first(X.cols()));
}

namespace {

// Returns S and records each step's pivot scalar.
DenseMatrix run_recursion(const DenseMatrix& top, std::vector<double>* pivots) {
  const std::size_t p = top.cols();
  DenseMatrix S(p, p);
  Vector u(p), w(p);
  for (std::size_t k = 0; k < p; ++k) {
    // u = S_k x^{(k)}_{k+1} (column k, rows 0..k-1); w = x_{k+1,1:k} S_k.
    double quad = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double ui = 0.0, wi = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        ui += S(i, j) * top(j, k);
        wi += top(k, j) * S(j, i);
      }
      u[i] = ui;
      w[i] = wi;
    }
    for (std::size_t i = 0; i < k; ++i) quad += top(k, i) * u[i];
    const double pivot = 1.0 - top(k, k) - quad;
    if (pivots) pivots->push_back(pivot);
    if (std::abs(pivot) < kRecursionPivotTol) continue;

    const double inv = 1.0 / pivot;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) S(i, j) += inv * u[i] * w[j];
      S(i, k) = inv * u[i];
      S(k, i) = inv * w[i];
    }
    S(k, k) = inv;
  }
  return S;
}

}  // namespace

SProjector s_recursion(const DenseMatrix& Xortho, const RowSelection& sel) {
  const std::size_t p = Xortho.cols();
  if (p > Xortho.rows()) throw DimensionError("s_recursion: more columns than rows");
  sel.validate(Xortho.rows(), p);
  require_orthonormal(Xortho, "s_recursion");

  std::vector<double> pivots;
  DenseMatrix S = run_recursion(permute_rows(Xortho, sel).top_rows(p), &pivots);
  const auto rank = static_cast<std::size_t>(std::count_if(
      pivots.begin(), pivots.end(), [](double v) { return std::abs(v) >= kRecursionPivotTol; }));
  return SProjector{p, std::move(S), rank, DenseMatrix::identity(p), SProjector::Source::Recursion};
}

std::vector<double> recursion_pivots(const DenseMatrix& Xortho, const RowSelection& sel) {
  sel.validate(Xortho.rows(), Xortho.cols());
  require_orthonormal(Xortho, "recursion_pivots");
  std::vector<double> pivots;
  run_recursion(permute_rows(Xortho, sel).top_rows(Xortho.cols()), &pivots);
  return pivots;
}

SProjector s_recursion(const DenseMatrix& Xortho) {
  return s_recursion(Xortho, RowSelection::first(Xortho.cols()));
}

SProjector s_from_c(const DenseMatrix& X, const DenseMatrix& C, const RowSelection& sel) {
  const std::size_t p = X.cols();
  if (C.rows() != p || C.cols() != p) throw DimensionError("s_from_c: C must be p x p");
  if (p >= X.rows()) throw DimensionError("s_from_c: requires p < n");
  const DenseMatrix c_inv = inverse(C);
  SProjector inner = s_recursion(X * c_inv, sel);
  return SProjector{p, c_inv * inner.S, inner.rank, C, SProjector::Source::FromC};
}

SProjector s_from_c(const DenseMatrix& X, const DenseMatrix& C) {
  return s_from_c(X, C, RowSelection::first(X.cols()));
}

std::vector<int> sign_fix(const DenseMatrix& C, const DenseMatrix& X, const RowSelection& sel) {
  const std::size_t p = X.cols();
  if (C.rows() != p || C.cols() != p) throw DimensionError("sign_fix: C must be p x p");
  sel.validate(X.rows(), p);
  const DenseMatrix top = permute_rows(X, sel).top_rows(p);
  const DenseMatrix M = top * inverse(C);

  std::vector<int> d(p, 1);
  // Inverse of the leading k x k block of D - M, grown one row/column at a time.
  DenseMatrix a_inv(p, p);
  Vector ainv_b(p), c_ainv(p);
  for (std::size_t k = 0; k < p; ++k) {
    double quad = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double ab = 0.0, ca = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        ab += a_inv(i, j) * M(j, k);
        ca += M(k, j) * a_inv(j, i);
      }
      ainv_b[i] = ab;
      c_ainv[i] = ca;
    }
    for (std::size_t i = 0; i < k; ++i) quad += M(k, i) * ainv_b[i];
    const double base = -M(k, k) - quad;
    const double plus = 1.0 + base;
    const double minus = -1.0 + base;
    d[k] = std::abs(minus) > std::abs(plus) ? -1 : 1;
    const double schur = d[k] == 1 ? plus : minus;

    const double inv = 1.0 / schur;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a_inv(i, j) += inv * ainv_b[i] * c_ainv[j];
      a_inv(i, k) = inv * ainv_b[i];
      a_inv(k, i) = inv * c_ainv[i];
    }
    a_inv(k, k) = inv;
  }

  const Vector sv_c = singular_values(C);
  const Vector sv = singular_values(apply_sign_fix(d, C) - top);
  if (!(sv.back() > 1e-12 * sv_c.front())) {
    throw InvariantViolation("sign_fix: DC - X^(p) remains singular");
  }
  return d;
}

std::vector<int> sign_fix(const DenseMatrix& C, const DenseMatrix& X) {
  return sign_fix(C, X, RowSelection::first(X.cols()));
}

DenseMatrix apply_sign_fix(std::span<const int> d, const DenseMatrix& C) {
  if (d.size() != C.rows()) throw DimensionError("apply_sign_fix: length mismatch");
  DenseMatrix out = C;
  for (std::size_t i = 0; i < C.rows(); ++i)
    for (std::size_t j = 0; j < C.cols(); ++j) out(i, j) *= d[i];
  return out;
}

Vector orthocomplement_apply(const SProjector& sp, const DenseMatrix& X, std::span<const double> x,
                             const RowSelection& sel) {
  const std::size_t n = X.rows();
  const std::size_t p = X.cols();
  if (x.size() != n) throw DimensionError("orthocomplement_apply: vector length does not match X");
  if (sp.p != p || sp.S.rows() != p) throw DimensionError("orthocomplement_apply: S does not match X");
  if (p >= n) throw DimensionError("orthocomplement_apply: requires p < n");
  sel.validate(n, p);

  const double x_norm = norm2(x);
  const double ortho = max_abs(transpose_times(X, x));
  if (!(ortho <= kOrthogonalityTol * x_norm * std::max(1.0, max_column_norm(X)))) {
    throw InvalidArgument("orthocomplement_apply: x is not orthogonal to col(X) (max |X^T x| = " +
                          std::to_string(ortho) + ")");
  }

  return orthocomplement_apply_unchecked(sp, X, x, sel);
}

Vector orthocomplement_apply_unchecked(const SProjector& sp, const DenseMatrix& X, std::span<const double> x,
                                       const RowSelection& sel) {
  const std::size_t n = X.rows();
  const std::size_t p = X.cols();
  if (x.size() != n) throw DimensionError("orthocomplement_apply: vector length does not match X");
  if (sp.p != p || sp.S.rows() != p) throw DimensionError("orthocomplement_apply: S does not match X");
  if (p >= n) throw DimensionError("orthocomplement_apply: requires p < n");
  sel.validate(n, p);

  const auto& head = sel.indices();
  Vector xp(p);
  for (std::size_t i = 0; i < p; ++i) xp[i] = x[head[i]];
  const Vector y = sp.S * xp;

  const auto rest = sel.complement(n);
  Vector out(n - p);
  for (std::size_t j = 0; j < rest.size(); ++j) out[j] = x[rest[j]] + dot(X.row(rest[j]), y);
  return out;
}

Vector orthocomplement_apply(const SProjector& sp, const DenseMatrix& X, std::span<const double> x) {
  return orthocomplement_apply(sp, X, x, RowSelection::first(X.cols()));
}

std::size_t rank_count(const HouseholderQR& qr, const DenseMatrix& X) {
  if (qr.n != X.rows() || qr.p != X.cols()) throw DimensionError("rank_count: factorization does not match X");
  const std::size_t count = qr.nonzero_reflector_count();
  const std::size_t r = numerical_rank(qr.T - X.top_rows(qr.p), kRankTol);
  if (r != count) {
    throw InvariantViolation("rank_count: " + std::to_string(count) +
                             " nonzero reflectors but rank(T - X^(p)) = " + std::to_string(r));
  }
  return count;
}

}  // namespace orthores
