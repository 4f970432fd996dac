// SPDX-License-Identifier: Apache-2.0
// Serial reference path against the OpenMP drop loop, plus the alpha search kernel.
#include "owcrs/experiment.hpp"
#include "owcrs/rsma.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

#include <algorithm>

using namespace owcrs;

namespace {

ExperimentConfig sweep_config(SweepKind kind, int drops, int threads) {
  ExperimentConfig cfg;
  cfg.sweep = kind;
  cfg.drops = drops;
  cfg.threads = threads;
  return cfg;
}

void BM_SnrSweepSerial(benchmark::State& state) {
  const auto cfg = sweep_config(SweepKind::kSnr, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(run_snr_sweep(cfg, Execution::kSerial));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SnrSweepParallel(benchmark::State& state) {
  const auto cfg = sweep_config(SweepKind::kSnr, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(run_snr_sweep(cfg, Execution::kParallel));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WaistSweepSerial(benchmark::State& state) {
  const auto cfg = sweep_config(SweepKind::kWaist, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(run_waist_sweep(cfg, Execution::kSerial));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WaistSweepParallel(benchmark::State& state) {
  const auto cfg =
      sweep_config(SweepKind::kWaist, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(run_waist_sweep(cfg, Execution::kParallel));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OptimizeAlpha(benchmark::State& state) {
  const int users = static_cast<int>(state.range(0));
  Scene scene;
  scene.aps = default_ap_positions(scene.room, 4);
  scene.users = sample_user_positions(42, users, scene.room);
  const ChannelMatrix cm =
      normalize_channel(build_channel_matrix(scene, AdrConfig{}, VcselParams{}, NoiseParams{}));
  const auto grid = default_alpha_grid(users);
  for (auto _ : state) benchmark::DoNotOptimize(optimize_alpha(cm, 100.0, grid));
}

void thread_args(benchmark::internal::Benchmark* b) {
  const int max_threads = std::max(1, omp_get_num_procs());
  for (int drops : {200, 1000}) {
    for (int t = 1; t <= max_threads; t *= 2) b->Args({drops, t});
    if ((max_threads & (max_threads - 1)) != 0) b->Args({drops, max_threads});
  }
}

}  // namespace

BENCHMARK(BM_SnrSweepSerial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SnrSweepParallel)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WaistSweepSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WaistSweepParallel)->Apply(thread_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OptimizeAlpha)->Arg(2)->Arg(10)->Arg(20);

BENCHMARK_MAIN();
