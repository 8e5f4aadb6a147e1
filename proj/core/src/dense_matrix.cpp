#include "orthores/dense_matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "orthores/errors.hpp"

namespace orthores {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> as_eigen(const DenseMatrix& a) {
  return {a.data().data(), static_cast<Eigen::Index>(a.rows()),
          static_cast<Eigen::Index>(a.cols())};
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  }
}

void require_same_length(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": length mismatch " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

void require_square(const DenseMatrix& a, const char* op) {
  if (a.rows() != a.cols()) throw DimensionError(std::string(op) + ": matrix is not square");
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : DenseMatrix(rows, cols, std::vector<double>(rows * cols, fill)) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("DenseMatrix: empty shape");
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("DenseMatrix: data length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
  }
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  if (rows.size() == 0) throw DimensionError("DenseMatrix::from_rows: no rows");
  const std::size_t cols = rows.begin()->size();
  std::vector<double> data;
  data.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionError("DenseMatrix::from_rows: ragged rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return {rows.size(), cols, std::move(data)};
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::column_vector(const Vector& v) { return {v.size(), 1, v}; }

DenseMatrix DenseMatrix::from_columns(const std::vector<Vector>& columns) {
  if (columns.empty()) throw DimensionError("DenseMatrix::from_columns: no columns");
  const std::size_t n = columns.front().size();
  DenseMatrix m(n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    require_same_length(columns[j].size(), n, "DenseMatrix::from_columns");
    for (std::size_t i = 0; i < n; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::top_rows(std::size_t k) const {
  if (k == 0 || k > rows_) throw DimensionError("top_rows: k out of range");
  return {k, cols_, std::vector<double>(data_.begin(), data_.begin() + k * cols_)};
}

DenseMatrix DenseMatrix::bottom_rows(std::size_t k) const {
  if (k >= rows_) throw DimensionError("bottom_rows: no rows remain");
  return {rows_ - k, cols_, std::vector<double>(data_.begin() + k * cols_, data_.end())};
}

DenseMatrix DenseMatrix::leading_block(std::size_t k) const {
  if (k == 0 || k > rows_ || k > cols_) throw DimensionError("leading_block: k out of range");
  DenseMatrix b(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
  return b;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "operator+");
  DenseMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] += bd[i];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "operator-");
  DenseMatrix c = a;
  auto cd = c.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] -= bd[i];
  return c;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("operator*: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (double& x : c.data()) x *= s;
  return c;
}

Vector operator*(const DenseMatrix& a, std::span<const double> x) {
  require_same_length(a.cols(), x.size(), "matrix-vector product");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Vector transpose_times(const DenseMatrix& a, std::span<const double> x) {
  require_same_length(a.rows(), x.size(), "transpose_times");
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double xi = x[i];
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += r[j] * xi;
  }
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double frobenius_norm(const DenseMatrix& a) { return norm2(a.data()); }

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const DenseMatrix& a) { return max_abs(a.data()); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  return max_abs_diff(a.data(), b.data());
}

Vector add(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "add");
  Vector c(a.begin(), a.end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "subtract");
  Vector c(a.begin(), a.end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
  return c;
}

Vector scale(double s, std::span<const double> x) {
  Vector c(x.begin(), x.end());
  for (double& v : c) v *= s;
  return c;
}

Vector singular_values(const DenseMatrix& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(as_eigen(a));
  const auto& sv = svd.singularValues();
  return Vector(sv.data(), sv.data() + sv.size());
}

std::size_t numerical_rank(const DenseMatrix& a, double rel_tol) {
  const Vector sv = singular_values(a);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cut = rel_tol * sv.front();
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

Vector solve(const DenseMatrix& a, std::span<const double> b) {
  require_square(a, "solve");
  require_same_length(a.rows(), b.size(), "solve");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(as_eigen(a));
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
  Eigen::VectorXd x = lu.solve(rhs);
  return Vector(x.data(), x.data() + x.size());
}

DenseMatrix inverse(const DenseMatrix& a, double rel_tol) {
  require_square(a, "inverse");
  const Vector sv = singular_values(a);
  if (sv.front() == 0.0 || sv.back() <= rel_tol * sv.front()) {
    throw SingularMatrixError("inverse: matrix is singular (sigma_min/sigma_max = " +
                              std::to_string(sv.front() == 0.0 ? 0.0 : sv.back() / sv.front()) +
                              ")");
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(as_eigen(a));
  RowMajor inv = lu.inverse();
  return {a.rows(), a.cols(), std::vector<double>(inv.data(), inv.data() + inv.size())};
}

}  // namespace orthores
