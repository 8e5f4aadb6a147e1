#include <gtest/gtest.h>

#include <cmath>

#include "orthores/errors.hpp"
#include "orthores/householder.hpp"
#include "test_support.hpp"

namespace orthores {
namespace {

using testing::dense_reflector;
using testing::random_matrix;
using testing::random_vector;

void expect_vec_near(const Vector& got, const Vector& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

// ---- make_reflector ----

TEST(MakeReflector, ThreeFourWithPlusSign) {
  const Vector x{3, 4};
  const Vector v = make_reflector(x, 0, +1);
  expect_vec_near(v, {8, 4}, 0.0);
  // Reflecting through the explicit matrix sends x to -||x|| e_1.
  const Vector hx = dense_reflector(v) * x;
  expect_vec_near(hx, {-5, 0}, 1e-14);
  EXPECT_NEAR(norm2(hx), norm2(x), 1e-14);
}

TEST(MakeReflector, ExactCancellationGivesZero) {
  const Vector v = make_reflector(Vector{1, 0, 0}, 0, -1);
  expect_vec_near(v, {0, 0, 0}, 0.0);
}

TEST(MakeReflector, OnesVector) {
  const Vector x{1, 1, 1, 1};
  const Vector v = make_reflector(x, 0, +1);
  expect_vec_near(v, {3, 1, 1, 1}, 0.0);
  expect_vec_near(dense_reflector(v) * x, {-2, 0, 0, 0}, 1e-14);
}

TEST(MakeReflector, LeadingComponentsUntouched) {
  const Vector x = random_vector(9, 11);
  for (std::size_t k = 0; k < 9; ++k) {
    for (int d : {+1, -1}) {
      const Vector v = make_reflector(x, k, d);
      for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(v[i], 0.0);
      const Vector hx = dense_reflector(v) * x;
      for (std::size_t i = 0; i < k; ++i) EXPECT_NEAR(hx[i], x[i], 1e-13);
      for (std::size_t i = k + 1; i < 9; ++i) EXPECT_NEAR(hx[i], 0.0, 1e-13);
    }
  }
}

TEST(MakeReflector, Errors) {
  EXPECT_THROW(make_reflector(Vector{1, 2}, 2, 1), DimensionError);
  EXPECT_THROW(make_reflector(Vector{1, 0, 0}, 1, 1), RankDeficiencyError);
  EXPECT_THROW(make_reflector(Vector{1, 2}, 0, 0), InvalidArgument);
}

// ---- apply_reflection ----

TEST(ApplyReflection, Examples) {
  expect_vec_near(apply_reflection(Vector{3, 1, 1, 1}, Vector{1, 1, 1, 1}), {-2, 0, 0, 0}, 1e-15);
  expect_vec_near(apply_reflection(Vector{0, 0}, Vector{5, 7}), {5, 7}, 0.0);
  expect_vec_near(apply_reflection(Vector{3, 1, 1, 1}, Vector{1, 0, 0, 0}), {-0.5, -0.5, -0.5, -0.5},
                  1e-15);
}

TEST(ApplyReflection, IsometryAndInvolution) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Vector v = random_vector(17, seed);
    const Vector x = random_vector(17, seed + 1000);
    const Vector y = apply_reflection(v, x);
    EXPECT_LT(testing::rel_gap(norm2(y), norm2(x)), 1e-12);
    EXPECT_LT(max_abs_diff(apply_reflection(v, y), x), 1e-12 * norm2(x));
  }
}

TEST(ApplyReflection, DimensionMismatch) {
  EXPECT_THROW(apply_reflection(Vector{1, 2}, Vector{1, 2, 3}), DimensionError);
}

// ---- householder_qr ----

TEST(HouseholderQR, ThreeFourColumn) {
  const auto qr = householder_qr(DenseMatrix::from_rows({{3}, {4}}), SignPolicy::standard());
  EXPECT_DOUBLE_EQ(qr.T(0, 0), -5.0);
  expect_vec_near(qr.reflectors[0], {8, 4}, 0.0);
  EXPECT_LT(max_abs_diff(reconstruct(qr), DenseMatrix::from_rows({{3}, {4}})), 1e-14);
}

TEST(HouseholderQR, OnesColumn) {
  const DenseMatrix X = testing::ones_column(4);
  const auto qr = householder_qr(X, SignPolicy::standard());
  EXPECT_DOUBLE_EQ(qr.T(0, 0), -2.0);
  expect_vec_near(qr.reflectors[0], {3, 1, 1, 1}, 0.0);
  EXPECT_LT(max_abs_diff(reconstruct(qr), X), 1e-14);
}

TEST(HouseholderQR, CustomSignAlreadyOnAxis) {
  const auto qr = householder_qr(DenseMatrix::from_rows({{1}, {0}, {0}}), SignPolicy::custom({-1}));
  EXPECT_TRUE(qr.is_identity_step(0));
  expect_vec_near(qr.reflectors[0], {0, 0, 0}, 0.0);
  EXPECT_DOUBLE_EQ(qr.T(0, 0), 1.0);
}

TEST(HouseholderQR, ToPositiveGivesPositiveDiagonal) {
  const DenseMatrix X = random_matrix(12, 4, 5);
  const auto qr = householder_qr(X, SignPolicy::to_positive());
  for (std::size_t k = 0; k < 4; ++k) EXPECT_GT(qr.T(k, k), 0.0);
  EXPECT_LT(max_abs_diff(reconstruct(qr), X), 1e-12);
}

TEST(HouseholderQR, MatchesProductOfDenseReflectors) {
  const DenseMatrix X = random_matrix(7, 3, 77);
  const auto qr = householder_qr(X);
  DenseMatrix G = DenseMatrix::identity(7);
  for (const auto& v : qr.reflectors) G = dense_reflector(v) * G;
  const DenseMatrix GX = G * X;
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double want = i < 3 ? qr.T(i, j) : 0.0;
      EXPECT_NEAR(GX(i, j), want, 1e-12);
    }
  }
}

TEST(HouseholderQR, RankDeficiencyNamesTheColumn) {
  DenseMatrix X = random_matrix(6, 3, 9);
  for (std::size_t i = 0; i < 6; ++i) X(i, 2) = 2.0 * X(i, 0) - X(i, 1);
  try {
    householder_qr(X);
    FAIL() << "expected RankDeficiencyError";
  } catch (const RankDeficiencyError& e) {
    EXPECT_EQ(e.step(), 2u);
  }
}

TEST(HouseholderQR, Errors) {
  EXPECT_THROW(householder_qr(random_matrix(2, 3, 1)), DimensionError);
  EXPECT_THROW(householder_qr(random_matrix(4, 2, 1), SignPolicy::custom({1})), InvalidArgument);
  EXPECT_THROW(SignPolicy::custom({1, 0}), InvalidArgument);
}

TEST(HouseholderQR, SquareMatrixIsAllowed) {
  const DenseMatrix X = random_matrix(5, 5, 3);
  EXPECT_LT(max_abs_diff(reconstruct(householder_qr(X)), X), 1e-12);
}

// Random sizes n <= 200, p <= 10: structure and reconstruction.
TEST(HouseholderQRProperty, ReconstructionAndStructure) {
  NormalSource dims(mix_seed(2024));
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t p = 1 + static_cast<std::size_t>(dims.uniform() * 10);
    const std::size_t n = p + 1 + static_cast<std::size_t>(dims.uniform() * (200 - p));
    const DenseMatrix X = random_matrix(n, p, 100 + trial);
    const auto qr = householder_qr(X, SignPolicy::standard());

    for (std::size_t k = 0; k < p; ++k) {
      for (std::size_t i = 0; i < k; ++i) ASSERT_EQ(qr.reflectors[k][i], 0.0);
      for (std::size_t i = k + 1; i < p; ++i) ASSERT_EQ(qr.T(i, k), 0.0);
    }
    EXPECT_EQ(qr.nonzero_reflector_count(), p);
    EXPECT_LT(max_abs_diff(reconstruct(qr), X) / max_abs(X), 1e-10) << "n=" << n << " p=" << p;
  }
}

// ---- apply_Qt ----

TEST(ApplyQt, OnesExamples) {
  const auto qr = householder_qr(testing::ones_column(4));
  expect_vec_near(apply_Qt(qr, testing::ones(4)), {-2, 0, 0, 0}, 1e-15);
  expect_vec_near(apply_Qt(qr, testing::unit(4, 0)), {-0.5, -0.5, -0.5, -0.5}, 1e-15);
  expect_vec_near(apply_Qt(qr, Vector(4, 0.0)), {0, 0, 0, 0}, 0.0);
}

TEST(ApplyQt, ColumnsMapToTriangularFactor) {
  const DenseMatrix X = random_matrix(40, 6, 31);
  const auto qr = householder_qr(X);
  for (std::size_t j = 0; j < 6; ++j) {
    const Vector y = apply_Qt(qr, X.column(j));
    for (std::size_t i = 0; i < 40; ++i) EXPECT_NEAR(y[i], i < 6 ? qr.T(i, j) : 0.0, 1e-10);
  }
}

TEST(ApplyQtProperty, PreservesNorm) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto qr = householder_qr(random_matrix(60, 4, seed));
    const Vector x = random_vector(60, seed + 500);
    EXPECT_LT(testing::rel_gap(norm2(apply_Qt(qr, x)), norm2(x)), 1e-12);
    EXPECT_LT(max_abs_diff(apply_Q(qr, apply_Qt(qr, x)), x), 1e-12 * norm2(x));
  }
}

TEST(ApplyQt, DimensionMismatch) {
  const auto qr = householder_qr(testing::ones_column(4));
  EXPECT_THROW(apply_Qt(qr, Vector(3, 1.0)), DimensionError);
}

// ---- explicit_orthocomplement_basis ----

void expect_orthocomplement(const DenseMatrix& X, const DenseMatrix& U2, double tol) {
  const std::size_t m = X.rows() - X.cols();
  ASSERT_EQ(U2.rows(), X.rows());
  ASSERT_EQ(U2.cols(), m);
  EXPECT_LT(max_abs_diff(U2.transpose() * U2, DenseMatrix::identity(m)), tol);
  EXPECT_LT(max_abs(U2.transpose() * X), tol);
}

TEST(ExplicitBasis, OnesColumn) {
  const DenseMatrix X = testing::ones_column(4);
  expect_orthocomplement(X, explicit_orthocomplement_basis(householder_qr(X)), 1e-10);
}

TEST(ExplicitBasis, SingleColumnComplement) {
  const DenseMatrix X = random_matrix(6, 5, 8);
  const DenseMatrix U2 = explicit_orthocomplement_basis(householder_qr(X));
  EXPECT_EQ(U2.cols(), 1u);
  expect_orthocomplement(X, U2, 1e-10);
}

TEST(ExplicitBasis, Random50x5) {
  const DenseMatrix X = random_matrix(50, 5, 42);
  expect_orthocomplement(X, explicit_orthocomplement_basis(householder_qr(X)), 1e-10);
}

TEST(ExplicitBasis, SquareHasNoComplement) {
  EXPECT_THROW(explicit_orthocomplement_basis(householder_qr(random_matrix(3, 3, 1))), DimensionError);
}

TEST(ExplicitBasisProperty, AgreesWithTailOfApplyQt) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 10 + seed * 3;
    const std::size_t p = 1 + seed % 5;
    const auto qr = householder_qr(random_matrix(n, p, seed));
    const DenseMatrix U2 = explicit_orthocomplement_basis(qr);
    const Vector x = random_vector(n, seed + 77);
    const Vector full = apply_Qt(qr, x);
    const Vector tail(full.begin() + static_cast<std::ptrdiff_t>(p), full.end());
    EXPECT_LT(max_abs_diff(transpose_times(U2, x), tail), 1e-10);
  }
}

}  // namespace
}  // namespace orthores
