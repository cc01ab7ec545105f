// Parallel kernels against their serial references on a 10,000-record set.

#include <benchmark/benchmark.h>

#include "thresh/pr.hpp"
#include "thresh/sweep.hpp"
#include "thresh/synth.hpp"

namespace {

const thresh::EvalSet& dataset() {
    static const auto es = thresh::generate(thresh::SynthSpec::uniform(2024, 10000, 0.5));
    return es;
}

void BM_SweepSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(thresh::run_sweep_serial(dataset(), {}));
}

void BM_SweepParallel(benchmark::State& state) {
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(thresh::run_sweep(dataset(), {}, threads));
}

void BM_PrSerial(benchmark::State& state) {
    const auto grid = thresh::make_grid({});
    for (auto _ : state) benchmark::DoNotOptimize(thresh::pr_curves_serial(dataset(), thresh::Task::reason, grid));
}

void BM_PrParallel(benchmark::State& state) {
    const auto grid = thresh::make_grid({});
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(thresh::pr_curves(dataset(), thresh::Task::reason, grid, threads));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
