// OpenMP trial loop against the serial reference, plus the analytic kernels.

#include <benchmark/benchmark.h>

#include "uavcre/analysis.hpp"
#include "uavcre/parallel.hpp"
#include "uavcre/simulator.hpp"

using namespace uavcre;

namespace {

SimConfig bench_config(long trials, GainMode mode)
{
    SimConfig sim;
    sim.n_trials = trials;
    sim.gain_mode = mode;
    sim.master_seed = 11;
    return sim;
}

template <auto Run>
void run_trials(benchmark::State& state)
{
    const NetworkParams params = NetworkParams::reference();
    const SimConfig sim = bench_config(state.range(0), static_cast<GainMode>(state.range(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(Run(params, sim));
    state.SetItemsProcessed(state.iterations() * sim.n_trials);
    state.counters["threads"] = worker_count();
}

void args(benchmark::internal::Benchmark* b)
{
    for (long n : {64L, 512L})
        for (GainMode mode : {GainMode::Geometric, GainMode::Approximate})
            b->Args({n, static_cast<long>(mode)});
    b->ArgNames({"trials", "mode"})->Unit(benchmark::kMillisecond);
}

void coverage_curve(benchmark::State& state)
{
    const NetworkParams params = NetworkParams::reference();
    const auto grid = default_gamma_grid_db();
    for (auto _ : state)
        benchmark::DoNotOptimize(analytic_metrics(params, 8.0, grid, RateModel::Link));
}

} // namespace

BENCHMARK(run_trials<simulate_trials_serial>)->Name("simulate_trials_serial")->Apply(args);
BENCHMARK(run_trials<simulate_trials>)->Name("simulate_trials_openmp")->Apply(args);
BENCHMARK(coverage_curve)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
