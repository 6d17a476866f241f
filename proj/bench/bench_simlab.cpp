#include "eqmargin/simlab.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

namespace {

eqmargin::MarginCorrelationConfig grid_config(long reps) {
    eqmargin::MarginCorrelationConfig cfg;
    cfg.p_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    cfg.reps_per_point = reps;
    cfg.seed = 1;
    return cfg;
}

void BM_MarginCorrelationReference(benchmark::State& state) {
    const auto cfg = grid_config(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(eqmargin::reference::run_margin_correlation_experiment(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 5);
}

void BM_MarginCorrelationKernel(benchmark::State& state) {
    const auto cfg = grid_config(state.range(0));
    const eqmargin::ExecutionPolicy exec{static_cast<int>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(eqmargin::run_margin_correlation_experiment(cfg, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 5);
}

void BM_FerReference(benchmark::State& state) {
    eqmargin::FerConfig cfg;
    cfg.reps = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(eqmargin::reference::estimate_fer(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FerKernel(benchmark::State& state) {
    eqmargin::FerConfig cfg;
    cfg.reps = state.range(0);
    const eqmargin::ExecutionPolicy exec{static_cast<int>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(eqmargin::estimate_fer(cfg, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ReplicationReference(benchmark::State& state) {
    eqmargin::ReplicationConfig cfg;
    cfg.reps = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(eqmargin::reference::run_replication_experiment(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ReplicationKernel(benchmark::State& state) {
    eqmargin::ReplicationConfig cfg;
    cfg.reps = state.range(0);
    const eqmargin::ExecutionPolicy exec{static_cast<int>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(eqmargin::run_replication_experiment(cfg, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void worker_args(benchmark::internal::Benchmark* b) {
    const int max_workers = omp_get_max_threads();
    for (int w = 1; w <= max_workers; w *= 2) b->Args({20000, w});
    if ((max_workers & (max_workers - 1)) != 0) b->Args({20000, max_workers});
}

}  // namespace

BENCHMARK(BM_MarginCorrelationReference)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MarginCorrelationKernel)->Apply(worker_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FerReference)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FerKernel)->Apply(worker_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ReplicationReference)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicationKernel)->Apply(worker_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
