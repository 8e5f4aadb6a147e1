#include "orthores/householder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orthores/errors.hpp"

namespace orthores {

SignPolicy SignPolicy::custom(std::vector<int> signs) {
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidArgument("SignPolicy::custom: signs must be +1 or -1");
  }
  return SignPolicy(Kind::Custom, std::move(signs));
}

int SignPolicy::sign_for(std::size_t k, double pivot) const {
  switch (kind_) {
    case Kind::Standard:
      return pivot < 0.0 ? -1 : 1;
    case Kind::ToPositive:
      return -1;
    case Kind::Custom:
      if (k >= signs_.size()) {
        throw InvalidArgument("SignPolicy::custom: no sign supplied for step " +
                              std::to_string(k) + " (have " + std::to_string(signs_.size()) +
                              ")");
      }
      return signs_[k];
  }
  return 1;
}

std::size_t HouseholderQR::nonzero_reflector_count() const {
  return static_cast<std::size_t>(std::count_if(reflector_sq_norms.begin(),
                                                reflector_sq_norms.end(),
                                                [](double s) { return s != 0.0; }));
}

Vector make_reflector(std::span<const double> x, std::size_t k, int sign) {
  const std::size_t n = x.size();
  if (k >= n) {
    throw DimensionError("make_reflector: step " + std::to_string(k) + " out of range for length " +
                         std::to_string(n));
  }
  if (sign != 1 && sign != -1) throw InvalidArgument("make_reflector: sign must be +1 or -1");

  const double tail_norm = norm2(x.subspan(k));
  if (tail_norm == 0.0) {
    throw RankDeficiencyError("make_reflector: tail of the column is zero at step " +
                                  std::to_string(k),
                              k);
  }

  Vector v(n, 0.0);
  std::copy(x.begin() + static_cast<std::ptrdiff_t>(k), x.end(),
            v.begin() + static_cast<std::ptrdiff_t>(k));
  v[k] += sign * tail_norm;

  // Full cancellation: x already sits on +-e_k in the target direction.
  if (norm2(v) <= kZeroReflectorTol * tail_norm) std::fill(v.begin(), v.end(), 0.0);
  return v;
}

void reflect_in_place(std::span<const double> v, double v_sq_norm, std::span<double> x) {
  if (v.size() != x.size()) throw DimensionError("reflect: length mismatch");
  if (v_sq_norm == 0.0) return;
  const double coef = 2.0 * dot(v, x) / v_sq_norm;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= coef * v[i];
}

Vector apply_reflection(std::span<const double> v, std::span<const double> x) {
  if (v.size() != x.size()) throw DimensionError("apply_reflection: length mismatch");
  Vector y(x.begin(), x.end());
  reflect_in_place(v, dot(v, v), y);
  return y;
}

HouseholderQR householder_qr(const DenseMatrix& X, const SignPolicy& policy) {
  const std::size_t n = X.rows();
  const std::size_t p = X.cols();
  if (p > n) {
    throw DimensionError("householder_qr: more columns (" + std::to_string(p) + ") than rows (" +
                         std::to_string(n) + ")");
  }
  if (policy.kind() == SignPolicy::Kind::Custom && policy.custom_signs().size() != p) {
    throw InvalidArgument("householder_qr: custom sign sequence has length " +
                          std::to_string(policy.custom_signs().size()) + ", expected " +
                          std::to_string(p));
  }

  const double x_norm = frobenius_norm(X);
  // Work column-wise; each column is updated by every earlier reflection.
  std::vector<Vector> work(p);
  for (std::size_t j = 0; j < p; ++j) work[j] = X.column(j);

  HouseholderQR qr;
  qr.n = n;
  qr.p = p;
  qr.policy = policy;
  qr.reflectors.reserve(p);
  qr.reflector_sq_norms.reserve(p);
  qr.signs.reserve(p);
  qr.T = DenseMatrix(p, p);

  for (std::size_t k = 0; k < p; ++k) {
    Vector& col = work[k];
    const double tail_norm = norm2(std::span<const double>(col).subspan(k));
    if (!(tail_norm > kRankDeficiencyTol * x_norm)) {
      throw RankDeficiencyError("householder_qr: column " + std::to_string(k) +
                                    " is linearly dependent on the preceding columns "
                                    "(pivot tail norm " +
                                    std::to_string(tail_norm) + ")",
                                k);
    }
    const int d = policy.sign_for(k, col[k]);
    Vector v = make_reflector(col, k, d);
    const double v_sq = dot(v, v);

    for (std::size_t j = k + 1; j < p; ++j) reflect_in_place(v, v_sq, work[j]);

    for (std::size_t i = 0; i < k; ++i) qr.T(i, k) = col[i];
    qr.T(k, k) = -d * tail_norm;
    for (std::size_t j = k + 1; j < p; ++j) {
      // Row k of later columns is final once H_k has been applied.
      qr.T(k, j) = work[j][k];
    }

    qr.reflectors.push_back(std::move(v));
    qr.reflector_sq_norms.push_back(v_sq);
    qr.signs.push_back(d);
  }
  return qr;
}

Vector apply_Qt(const HouseholderQR& qr, std::span<const double> x) {
  if (x.size() != qr.n) throw DimensionError("apply_Qt: vector length does not match n");
  Vector y(x.begin(), x.end());
  for (std::size_t k = 0; k < qr.p; ++k) reflect_in_place(qr.reflectors[k], qr.reflector_sq_norms[k], y);
  return y;
}

Vector apply_Q(const HouseholderQR& qr, std::span<const double> y) {
  if (y.size() != qr.n) throw DimensionError("apply_Q: vector length does not match n");
  Vector x(y.begin(), y.end());
  for (std::size_t k = qr.p; k-- > 0;) reflect_in_place(qr.reflectors[k], qr.reflector_sq_norms[k], x);
  return x;
}

DenseMatrix reconstruct(const HouseholderQR& qr) {
  DenseMatrix X(qr.n, qr.p);
  Vector col(qr.n);
  for (std::size_t j = 0; j < qr.p; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    for (std::size_t i = 0; i <= j; ++i) col[i] = qr.T(i, j);
    const Vector x = apply_Q(qr, col);
    for (std::size_t i = 0; i < qr.n; ++i) X(i, j) = x[i];
  }
  return X;
}

DenseMatrix explicit_orthocomplement_basis(const HouseholderQR& qr) {
  if (qr.p >= qr.n) throw DimensionError("explicit_orthocomplement_basis: p = n, complement is empty");
  const std::size_t m = qr.n - qr.p;
  DenseMatrix U2(qr.n, m);
  Vector e(qr.n);
  for (std::size_t j = 0; j < m; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[qr.p + j] = 1.0;
    for (std::size_t k = qr.p; k-- > 0;) reflect_in_place(qr.reflectors[k], qr.reflector_sq_norms[k], e);
    for (std::size_t i = 0; i < qr.n; ++i) U2(i, j) = e[i];
  }
  return U2;
}

}  // namespace orthores
