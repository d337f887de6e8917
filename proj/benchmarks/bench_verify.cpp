#include <benchmark/benchmark.h>

#include "berezin/verify.hpp"

using namespace berezin;

static void BM_FuzzAllBounds(benchmark::State& state) {
  FuzzConfig cfg;
  for (const auto& info : bound_catalog()) cfg.bound_ids.push_back(info.id);
  cfg.n_trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fuzz(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.bound_ids.size() * 4 * cfg.n_trials));
}
BENCHMARK(BM_FuzzAllBounds)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_ReplayTrial(benchmark::State& state) {
  FuzzConfig cfg;
  const InstanceSpec s = fuzz_spec("th10", Ensemble::ComplexGaussian, 5, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(replay("th10", s));
}
BENCHMARK(BM_ReplayTrial);
