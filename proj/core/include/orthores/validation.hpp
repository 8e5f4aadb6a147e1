#pragma once

// Independent checks of the fast constructions: brute-force references,
// algebraic identities, Monte Carlo moment checks and a timing harness.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "orthores/dense_matrix.hpp"
#include "orthores/orthocomp.hpp"

namespace orthores {

struct StudentRoots {
  double c_plus = 0.0;   // 1 / (sqrt(n) - 1)
  double c_minus = 0.0;  // -1 / (sqrt(n) + 1)
};

/// Solves (n-1)c^2 - 2c - 1 = 0 and checks both roots against their closed
/// forms to 1e-12; throws InvariantViolation otherwise.
StudentRoots verify_student_roots(std::size_t n);

/// Max-entry residual of
///   S^T (I - P^T P) S - P S - S^T P^T - I,   P = selected p rows of Xortho.
double s_condition_residual(const DenseMatrix& S, const DenseMatrix& Xortho, const RowSelection& sel);

/// True when the residual above is at most 1e-9.
bool verify_s_condition(const DenseMatrix& S, const DenseMatrix& Xortho, const RowSelection& sel);
bool verify_s_condition(const DenseMatrix& S, const DenseMatrix& Xortho);

/// Unpivoted LDL^T of I - (1/n) 1 1^T with the trailing zero pivot dropped.
struct ChengFactorization {
  DenseMatrix L{1, 1};  // n x (n-1), unit lower trapezoidal
  Vector D;             // n - 1 pivots
  DenseMatrix M{1, 1};  // L D^{1/2}
};

ChengFactorization cheng_matrix(std::size_t n);

/// Whether symmetric B is idempotent. Decides by ||B^2 - B||_max <= 1e-10 and
/// cross-checks rank(B) + rank(I - B) == n; throws InvariantViolation if the
/// two criteria disagree.
bool idempotent_check(const DenseMatrix& B);

/// Max entrywise gap between the closed formula and U_2^T x over `trials`
/// random x in col(X)^perp. 0 when trials == 0.
double oracle_compare(const DenseMatrix& X, std::size_t trials, std::uint64_t seed);

enum class Construction { Generic, StudentMinus, StudentPlus, UnivariateA, UnivariateB };

std::string to_string(Construction c);
/// Throws InvalidArgument on an unknown name.
Construction construction_from_string(const std::string& name);

struct SimulationConfig {
  std::size_t n = 10;
  std::size_t p = 2;
  Vector beta;  // empty means all ones
  double sigma = 1.0;
  std::size_t replicates = 1000;
  std::uint64_t seed = 0;
  Construction construction = Construction::Generic;

  /// Throws InvalidArgument when the configuration is unusable.
  void validate() const;
};

struct SimulationReport {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t replicates = 0;
  Vector mean_W;
  DenseMatrix cov_W{1, 1};
  double mean_rss_over_sigma2 = 0.0;
  double var_rss_over_sigma2 = 0.0;
  double max_ss_identity_error = 0.0;
  /// Empirical covariance of the ordinary residuals over sigma^2.
  DenseMatrix cov_R{1, 1};
  /// Its population value, I - X (X^T X)^{-1} X^T.
  DenseMatrix expected_cov_R{1, 1};
};

/// Fixed design matrix used for a configuration (depends only on n, p,
/// construction and seed).
DenseMatrix simulation_design(const SimulationConfig& cfg);

SimulationReport monte_carlo(const SimulationConfig& cfg);

struct BenchmarkTiming {
  std::string method;  // "explicit_basis", "reflection_apply", "closed_formula"
  std::size_t n = 0;
  double seconds = 0.0;  // best time per application
  /// Max |result - explicit basis result| for this n.
  double max_disagreement = 0.0;
};

std::vector<BenchmarkTiming> benchmark_apply(const std::vector<std::size_t>& n_grid, std::size_t p,
                                             std::size_t repeats, std::uint64_t seed = 1);

}  // namespace orthores
