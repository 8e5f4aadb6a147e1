#include <benchmark/benchmark.h>

#include "orthores/householder.hpp"
#include "orthores/orthocomp.hpp"
#include "orthores/random.hpp"
#include "orthores/regression.hpp"

namespace {

using namespace orthores;

constexpr std::size_t kP = 5;

struct Fixture {
  DenseMatrix X{1, 1};
  HouseholderQR qr;
  SProjector sp;
  Vector x;

  explicit Fixture(std::size_t n) {
    NormalSource rng(mix_seed(n));
    X = rng.matrix(n, kP);
    qr = householder_qr(X);
    sp = s_from_qr(qr, X);
    Vector y = apply_Qt(qr, rng.vector(n));
    std::fill(y.begin(), y.begin() + kP, 0.0);
    x = apply_Q(qr, y);
  }
};

void BM_ExplicitBasis(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  const DenseMatrix U2 = explicit_orthocomplement_basis(f.qr);
  for (auto _ : state) benchmark::DoNotOptimize(transpose_times(U2, f.x));
  state.SetComplexityN(state.range(0));
}

void BM_ReflectionApply(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_Qt(f.qr, f.x));
  state.SetComplexityN(state.range(0));
}

void BM_ClosedFormula(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(orthocomplement_apply(f.sp, f.X, f.x));
  state.SetComplexityN(state.range(0));
}

void BM_HouseholderQR(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(householder_qr(f.X));
  state.SetComplexityN(state.range(0));
}

void BM_StudentW(benchmark::State& state) {
  NormalSource rng(3);
  const Vector Y = rng.vector(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(student_w(Y));
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_ExplicitBasis)->RangeMultiplier(2)->Range(500, 4000)->Complexity();
BENCHMARK(BM_ReflectionApply)->RangeMultiplier(4)->Range(1000, 64000)->Complexity();
BENCHMARK(BM_ClosedFormula)->RangeMultiplier(4)->Range(1000, 64000)->Complexity();
BENCHMARK(BM_HouseholderQR)->RangeMultiplier(4)->Range(1000, 64000)->Complexity();
BENCHMARK(BM_StudentW)->RangeMultiplier(4)->Range(1000, 64000)->Complexity();
BENCHMARK_MAIN();
