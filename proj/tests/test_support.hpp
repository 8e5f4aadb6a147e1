#pragma once

// Test-only generators and brute-force references. Nothing here calls the
// closed-form code paths under test; the references are built from explicit
// dense matrices, Gram-Schmidt and normal equations.

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "orthores/dense_matrix.hpp"
#include "orthores/householder.hpp"
#include "orthores/random.hpp"

namespace orthores::testing {

inline Vector ones(std::size_t n) { return Vector(n, 1.0); }

inline DenseMatrix ones_column(std::size_t n) { return DenseMatrix(n, 1, 1.0); }

inline Vector unit(std::size_t n, std::size_t k) {
  Vector e(n, 0.0);
  e[k] = 1.0;
  return e;
}

/// Explicit n x n matrix I - 2 v v^T / ||v||^2 (identity for v = 0).
inline DenseMatrix dense_reflector(const Vector& v) {
  const std::size_t n = v.size();
  DenseMatrix H = DenseMatrix::identity(n);
  const double vv = dot(v, v);
  if (vv == 0.0) return H;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) H(i, j) -= 2.0 * v[i] * v[j] / vv;
  return H;
}

/// Modified Gram-Schmidt; returns Q with orthonormal columns spanning col(A).
inline DenseMatrix gram_schmidt(const DenseMatrix& A) {
  std::vector<Vector> q;
  for (std::size_t j = 0; j < A.cols(); ++j) {
    Vector v = A.column(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : q) {
        const double c = dot(u, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
      }
    }
    const double nv = norm2(v);
    for (double& x : v) x /= nv;
    q.push_back(std::move(v));
  }
  return DenseMatrix::from_columns(q);
}

/// Upper-triangular R (positive diagonal) with A = Q R for Q = gram_schmidt(A).
inline DenseMatrix gram_schmidt_r(const DenseMatrix& A) {
  const DenseMatrix Q = gram_schmidt(A);
  return Q.transpose() * A;
}

/// x - X (X^T X)^{-1} X^T x via the normal equations.
inline Vector project_out(const DenseMatrix& X, const Vector& x) {
  const DenseMatrix Xt = X.transpose();
  const Vector coef = solve(Xt * X, transpose_times(X, x));
  return subtract(x, X * coef);
}

/// Orthonormal basis of col(X)^perp from Gram-Schmidt on [X, I].
inline DenseMatrix gram_schmidt_complement(const DenseMatrix& X) {
  const std::size_t n = X.rows();
  const DenseMatrix Q = gram_schmidt(X);
  std::vector<Vector> q;
  for (std::size_t j = 0; j < Q.cols(); ++j) q.push_back(Q.column(j));
  std::vector<Vector> out;
  for (std::size_t k = 0; k < n && out.size() < n - X.cols(); ++k) {
    Vector v = unit(n, k);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : q) {
        const double c = dot(u, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * u[i];
      }
      for (const auto& u : out) {
        const double c = dot(u, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * u[i];
      }
    }
    const double nv = norm2(v);
    if (nv < 1e-8) continue;
    for (double& x : v) x /= nv;
    out.push_back(std::move(v));
  }
  return DenseMatrix::from_columns(out);
}

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  NormalSource rng(mix_seed(seed));
  return rng.matrix(rows, cols);
}

inline Vector random_vector(std::size_t n, std::uint64_t seed) {
  NormalSource rng(mix_seed(seed));
  return rng.vector(n);
}

inline DenseMatrix random_orthonormal(std::size_t n, std::size_t p, std::uint64_t seed) {
  return gram_schmidt(random_matrix(n, p, seed));
}

/// Random p x p orthogonal matrix.
inline DenseMatrix random_orthogonal(std::size_t p, std::uint64_t seed) {
  return gram_schmidt(random_matrix(p, p, seed));
}

/// Orthonormal n x p matrix whose ToPositive factorization has zero
/// reflectors exactly at the steps listed in `zero_steps`.
///
/// At a forced step j the column is G_{j-1}^T e_j, which the factorization
/// maps onto +e_j with no reflection. Other columns are random unit vectors
/// orthogonal to the previous ones.
inline DenseMatrix orthonormal_with_zero_steps(std::size_t n, std::size_t p,
                                               const std::set<std::size_t>& zero_steps,
                                               std::uint64_t seed) {
  NormalSource rng(mix_seed(seed));
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < p; ++j) {
    Vector x;
    if (zero_steps.count(j)) {
      if (cols.empty()) {
        x = unit(n, 0);
      } else {
        const HouseholderQR qr = householder_qr(DenseMatrix::from_columns(cols), SignPolicy::to_positive());
        x = apply_Q(qr, unit(n, j));
      }
    } else {
      x = rng.vector(n);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& u : cols) {
          const double c = dot(u, x);
          for (std::size_t i = 0; i < n; ++i) x[i] -= c * u[i];
        }
      }
      const double nx = norm2(x);
      for (double& v : x) v /= nx;
    }
    cols.push_back(std::move(x));
  }
  return DenseMatrix::from_columns(cols);
}

/// The univariate singular configuration: t_1 = 1/sqrt(n),
/// t_2 = 1 - 1/(sqrt(n)(sqrt(n)-1)), t_j = -1/(sqrt(n)(sqrt(n)-1)).
inline Vector singular_predictor(std::size_t n) {
  const double rn = std::sqrt(static_cast<double>(n));
  const double tail = -1.0 / (rn * (rn - 1.0));
  Vector t(n, tail);
  t[0] = 1.0 / rn;
  t[1] = 1.0 + tail;
  return t;
}

/// X = [1/sqrt(n), t] for a standardized predictor t.
inline DenseMatrix orthonormal_line_design(const Vector& t) {
  const std::size_t n = t.size();
  DenseMatrix X(n, 2);
  const double c = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    X(i, 0) = c;
    X(i, 1) = t[i];
  }
  return X;
}

inline double rel_gap(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace orthores::testing
