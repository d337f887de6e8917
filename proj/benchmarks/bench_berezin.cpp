#include <benchmark/benchmark.h>

#include "berezin/berezin.hpp"
#include "berezin/block_matrix.hpp"

using namespace berezin;

static void BM_HardyBerMz(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const RkhsModel h = RkhsModel::hardy(n, 0.999);
  const CMatrix mz = hardy_operator(HardyKind::Mz, n);
  for (auto _ : state) benchmark::DoNotOptimize(berezin_number(mz, h));
}
BENCHMARK(BM_HardyBerMz)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_HardyPairNorm(benchmark::State& state) {
  const Eigen::Index n = 400;
  const RkhsModel h = RkhsModel::hardy(n, 0.999);
  const RkhsModel ds = RkhsModel::direct_sum({h, h});
  const CMatrix p = assemble_block(BlockMatrix::diagonal(
      {hardy_operator(HardyKind::PConst, n), hardy_operator(HardyKind::PMonomial, n, 1)}));
  for (auto _ : state) benchmark::DoNotOptimize(berezin_norm(p, ds));
}
BENCHMARK(BM_HardyPairNorm)->Unit(benchmark::kMillisecond);
