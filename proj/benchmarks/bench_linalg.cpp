#include <benchmark/benchmark.h>

#include "berezin/linalg.hpp"
#include "berezin/random.hpp"

using namespace berezin;

static void BM_HermEig(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  Rng rng(1);
  const CMatrix a = hermitian_part(random_matrix(rng, Ensemble::ComplexGaussian, n, n));
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(a));
}
BENCHMARK(BM_HermEig)->Arg(4)->Arg(16)->Arg(64)->Arg(400);

static void BM_NumericalRadius(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  Rng rng(2);
  const CMatrix a = random_matrix(rng, Ensemble::ComplexGaussian, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(numerical_radius(a));
}
BENCHMARK(BM_NumericalRadius)->Arg(2)->Arg(6)->Arg(12)->Arg(36);

static void BM_AbsOp(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  Rng rng(3);
  const CMatrix a = random_matrix(rng, Ensemble::ComplexGaussian, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(abs_op(a));
}
BENCHMARK(BM_AbsOp)->Arg(6)->Arg(64);
