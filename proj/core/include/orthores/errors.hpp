#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orthores {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input columns are (numerically) linearly dependent. `step` is the
// 0-based column index at which the factorization detected it.
class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(const std::string& what, std::size_t step)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// An identity that must hold by construction failed numerically.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace orthores
