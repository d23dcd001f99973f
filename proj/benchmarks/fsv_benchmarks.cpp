#include <benchmark/benchmark.h>

#include "fsv/dataset.hpp"
#include "fsv/experiment.hpp"
#include "fsv/kfold.hpp"
#include "fsv/sampling.hpp"

namespace {

void BM_SrsSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto s = fsv::derive_stream(42, 0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::srs_sample(n, 3 * n / 4, s));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(3 * n / 4));
}
BENCHMARK(BM_SrsSample)->Arg(10'000)->Arg(100'000);

void BM_StandardNormal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto s = fsv::derive_stream(42, 0, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::standard_normal(s, n));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_StandardNormal)->Arg(100'000);

void BM_FoldsAndEvaluate(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  auto s = fsv::derive_stream(42, 0, 2);
  const auto sample = fsv::standard_normal(s, m);
  for (auto _ : state) {
    const auto plan = fsv::make_folds(m, 5, s);
    benchmark::DoNotOptimize(fsv::evaluate_folds(sample, plan));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m));
}
BENCHMARK(BM_FoldsAndEvaluate)->Arg(7'500)->Arg(75'000);

void BM_RunCell(benchmark::State& state) {
  fsv::ExperimentConfig cfg;
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::run_cell(cfg, n, t, fsv::RunOptions{1}));
  }
}
BENCHMARK(BM_RunCell)->Args({10'000, 10})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
