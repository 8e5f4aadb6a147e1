#include "orthores/random.hpp"

#include <cmath>
#include <numbers>

namespace orthores {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double NormalSource::uniform() {
  // 53 random mantissa bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Vector NormalSource::vector(std::size_t n) {
  Vector v(n);
  for (double& x : v) x = next();
  return v;
}

DenseMatrix NormalSource::matrix(std::size_t rows, std::size_t cols) {
  DenseMatrix m(rows, cols);
  for (double& x : m.data()) x = next();
  return m;
}

}  // namespace orthores
