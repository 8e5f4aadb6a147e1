#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace orthores {

using Vector = std::vector<double>;

/// Row-major dense matrix of doubles. Always at least 1x1.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  /// Builds from nested row lists; all rows must have equal length.
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix identity(std::size_t n);
  /// Single column matrix holding `v`.
  static DenseMatrix column_vector(const Vector& v);
  /// Assembles an n x p matrix from p columns of equal length n.
  static DenseMatrix from_columns(const std::vector<Vector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  Vector column(std::size_t j) const;
  DenseMatrix transpose() const;

  /// First `k` rows (the A^{(k)} block).
  DenseMatrix top_rows(std::size_t k) const;
  /// Rows k..rows()-1 (the A_{(k)} block).
  DenseMatrix bottom_rows(std::size_t k) const;
  /// Leading k x k principal block.
  DenseMatrix leading_block(std::size_t k) const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);
Vector operator*(const DenseMatrix& a, std::span<const double> x);

/// a^T x without forming the transpose.
Vector transpose_times(const DenseMatrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> x);
double frobenius_norm(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);
double max_abs(std::span<const double> x);
/// Entrywise max |a - b|; shapes must match.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

Vector add(std::span<const double> a, std::span<const double> b);
Vector subtract(std::span<const double> a, std::span<const double> b);
Vector scale(double s, std::span<const double> x);

/// Singular values in decreasing order.
Vector singular_values(const DenseMatrix& a);
/// Number of singular values above rel_tol * sigma_max (0 for the zero matrix).
std::size_t numerical_rank(const DenseMatrix& a, double rel_tol = 1e-10);
/// Solves a x = b for square nonsingular a (partial-pivot LU).
Vector solve(const DenseMatrix& a, std::span<const double> b);
/// Inverse of a square matrix; throws SingularMatrixError when the smallest
/// singular value is below rel_tol * sigma_max.
DenseMatrix inverse(const DenseMatrix& a, double rel_tol = 1e-12);

}  // namespace orthores
