#pragma once

// Householder reflections and the QR factorization built from them.
//
// Reflectors are kept at full length n with explicit leading zeros and are
// not normalized. A reflector of all zeros stands for the identity map.
// Index arguments are 0-based throughout.

#include <cstddef>
#include <span>
#include <vector>

#include "orthores/dense_matrix.hpp"

namespace orthores {

/// Sign convention for the reflector at each elimination step.
///
/// The reflector at step k is v = x + d * ||x_tail|| * e_k, which maps the
/// working column to -d * ||x_tail|| * e_k.
///  - Standard: d = sgn(pivot), with sgn(0) = +1. Never cancels.
///  - ToPositive: d = -1, so the column maps to +||x_tail|| * e_k.
///  - Custom: caller-supplied d per step.
class SignPolicy {
 public:
  enum class Kind { Standard, ToPositive, Custom };

  static SignPolicy standard() { return SignPolicy(Kind::Standard, {}); }
  static SignPolicy to_positive() { return SignPolicy(Kind::ToPositive, {}); }
  /// Each entry must be +1 or -1.
  static SignPolicy custom(std::vector<int> signs);

  Kind kind() const noexcept { return kind_; }
  const std::vector<int>& custom_signs() const noexcept { return signs_; }

  /// Sign d for step `k` given the pivot component of the working column.
  int sign_for(std::size_t k, double pivot) const;

 private:
  SignPolicy(Kind kind, std::vector<int> signs) : kind_(kind), signs_(std::move(signs)) {}

  Kind kind_;
  std::vector<int> signs_;
};

/// Result of factoring an n x p matrix X as H_p ... H_1 X = [T; 0].
struct HouseholderQR {
  std::size_t n = 0;
  std::size_t p = 0;
  /// reflectors[k] has length n and zeros in components 0..k-1.
  std::vector<Vector> reflectors;
  /// Cached ||v_k||^2 (0 for an identity step).
  std::vector<double> reflector_sq_norms;
  /// Sign d_k actually used at each step.
  std::vector<int> signs;
  DenseMatrix T{1, 1};
  SignPolicy policy = SignPolicy::standard();

  bool is_identity_step(std::size_t k) const { return reflector_sq_norms[k] == 0.0; }
  std::size_t nonzero_reflector_count() const;
};

/// Relative size (against the tail norm) below which a computed reflector is
/// treated as exact cancellation and replaced by zero.
inline constexpr double kZeroReflectorTol = 1e-12;

/// Pivot tail norms below this multiple of ||X||_F signal rank deficiency.
inline constexpr double kRankDeficiencyTol = 1e-12;

/// Reflector sending x to a multiple of e_k with components 0..k-1 untouched.
/// Throws DimensionError for k >= n and RankDeficiencyError when x[k..] is 0.
Vector make_reflector(std::span<const double> x, std::size_t k, int sign);

/// (I - 2 v v^T / ||v||^2) x; identity when v is zero.
Vector apply_reflection(std::span<const double> v, std::span<const double> x);

/// In-place variant with a precomputed ||v||^2.
void reflect_in_place(std::span<const double> v, double v_sq_norm, std::span<double> x);

/// Factors X (n x p, p <= n). Throws RankDeficiencyError naming the column
/// whose pivot tail vanished.
HouseholderQR householder_qr(const DenseMatrix& X, const SignPolicy& policy = SignPolicy::standard());

/// G_p x = H_p ... H_1 x. O(np).
Vector apply_Qt(const HouseholderQR& qr, std::span<const double> x);

/// H_1 ... H_p y, the inverse of apply_Qt.
Vector apply_Q(const HouseholderQR& qr, std::span<const double> y);

/// H_1 ... H_p [T; 0]; should reproduce the factored matrix.
DenseMatrix reconstruct(const HouseholderQR& qr);

/// Last n - p columns of H_1 ... H_p, materialized. O(n^2 p) time and
/// O(n^2) memory; intended as a reference, not for the fast path.
DenseMatrix explicit_orthocomplement_basis(const HouseholderQR& qr);

}  // namespace orthores
