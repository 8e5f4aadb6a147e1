#pragma once

// Closed-form action of the orthocomplement basis produced by Householder QR.
//
// For X (n x p, full rank) and x orthogonal to col(X), the last n - p
// coordinates of H_p ... H_1 x equal
//
//     x_(p) + X_(p) S x^(p)
//
// where x^(p) / X^(p) are the selected p rows and x_(p) / X_(p) the rest.
// S is a p x p matrix: (T - X^(p))^{-1} when T comes from the standard-sign
// factorization, and more generally (C - X^(p))^{-1} for any C with XC^{-1}
// orthonormal, or a rank-deficient generalized inverse built by a rank-one
// recursion when C - X^(p) is singular.

#include <cstddef>
#include <span>
#include <vector>

#include "orthores/dense_matrix.hpp"
#include "orthores/householder.hpp"

namespace orthores {

/// Which p rows of X play the role of "the first p rows". The remaining rows
/// keep their original relative order.
class RowSelection {
 public:
  /// Indices must be distinct; they are stored sorted ascending.
  explicit RowSelection(std::vector<std::size_t> indices);
  /// Rows 0..p-1.
  static RowSelection first(std::size_t p);

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool is_leading() const noexcept;

  /// Throws DimensionError unless size() == p and every index < n.
  void validate(std::size_t n, std::size_t p) const;
  /// Unselected rows in increasing order.
  std::vector<std::size_t> complement(std::size_t n) const;
  /// Selected rows followed by the complement; a row permutation of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n) const;

  bool operator==(const RowSelection&) const = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Rows of X reordered by sel.permutation(n).
DenseMatrix permute_rows(const DenseMatrix& X, const RowSelection& sel);
Vector permute(std::span<const double> x, const RowSelection& sel);

struct SProjector {
  enum class Source { FromT, FromC, Recursion };

  std::size_t p = 0;
  DenseMatrix S{1, 1};
  std::size_t rank = 0;
  /// T from the factorization, C, or I_p for the plain recursion.
  DenseMatrix normalizer{1, 1};
  Source source = Source::FromT;
};

/// |pivot| below this takes the rank-deficient branch of the recursion.
inline constexpr double kRecursionPivotTol = 1e-10;
/// Allowed max |X^T X - I| for inputs declared orthonormal.
inline constexpr double kOrthonormalityTol = 1e-8;
/// Allowed max |X^T x| / ||x|| for vectors declared orthogonal to col(X).
inline constexpr double kOrthogonalityTol = 1e-8;
/// Relative singular-value cut for rank decisions.
inline constexpr double kRankTol = 1e-10;

/// Convenience: QR of the row-permuted X, as expected by s_from_qr.
HouseholderQR factor_selected(const DenseMatrix& X, const RowSelection& sel,
                              const SignPolicy& policy = SignPolicy::standard());

/// S = (T - X^(p))^{-1}. `qr` must be the factorization of permute_rows(X, sel)
/// (factor_selected does this). Throws SingularMatrixError when T - X^(p) is
/// singular, which only happens with non-standard sign policies.
SProjector s_from_qr(const HouseholderQR& qr, const DenseMatrix& X, const RowSelection& sel);
SProjector s_from_qr(const HouseholderQR& qr, const DenseMatrix& X);

/// Rank-one recursion on an orthonormal-column matrix. Works in the singular
/// case too; rank equals the number of steps whose pivot was nonzero.
SProjector s_recursion(const DenseMatrix& Xortho, const RowSelection& sel);
SProjector s_recursion(const DenseMatrix& Xortho);

/// Per-step pivots of the recursion (one per column), mostly for diagnostics.
std::vector<double> recursion_pivots(const DenseMatrix& Xortho, const RowSelection& sel);

/// S = C^{-1} S' with S' from the recursion on X C^{-1}. Equals
/// (C - X^(p))^{-1} whenever that inverse exists.
SProjector s_from_c(const DenseMatrix& X, const DenseMatrix& C, const RowSelection& sel);
SProjector s_from_c(const DenseMatrix& X, const DenseMatrix& C);

/// Diagonal D of +-1 with D C - X^(p) nonsingular, chosen greedily one step at a
/// time by the block-inverse pivot test (larger |pivot| wins, +1 on ties).
std::vector<int> sign_fix(const DenseMatrix& C, const DenseMatrix& X, const RowSelection& sel);
std::vector<int> sign_fix(const DenseMatrix& C, const DenseMatrix& X);

/// diag(d) * C.
DenseMatrix apply_sign_fix(std::span<const int> d, const DenseMatrix& C);

/// x_(p) + X_(p) S x^(p), with rows split according to `sel`. Output entries
/// follow the complement rows in increasing index order.
Vector orthocomplement_apply(const SProjector& sp, const DenseMatrix& X, std::span<const double> x,
                             const RowSelection& sel);
Vector orthocomplement_apply(const SProjector& sp, const DenseMatrix& X, std::span<const double> x);

/// Same formula without the orthogonality check, for callers that have
/// already verified x against a better scale (e.g. residuals against ||Y||).
Vector orthocomplement_apply_unchecked(const SProjector& sp, const DenseMatrix& X, std::span<const double> x,
                                       const RowSelection& sel);

/// Number of nonzero reflectors in `qr` (the factorization of X). Throws
/// InvariantViolation if it differs from the numerical rank of T - X^(p).
std::size_t rank_count(const HouseholderQR& qr, const DenseMatrix& X);

}  // namespace orthores
