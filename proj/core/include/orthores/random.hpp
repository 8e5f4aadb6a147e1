#pragma once

#include <cstdint>
#include <random>

#include "orthores/dense_matrix.hpp"

namespace orthores {

/// SplitMix64 finalizer; used to derive independent per-stream seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seedable N(0, 1) source: mt19937_64 bits, 53-bit uniforms, Box-Muller.
/// Every piece is fully specified, so output is identical across standard
/// libraries for a given seed.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double next();
  /// Uniform on (0, 1).
  double uniform();

  Vector vector(std::size_t n);
  DenseMatrix matrix(std::size_t rows, std::size_t cols);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace orthores
