// Serial reference vs OpenMP kernels. Arg 0 selects the path: 0 serial, 1 parallel.

#include "egowords/clustering.hpp"
#include "egowords/rng.hpp"
#include "egowords/synth.hpp"
#include "egowords/tailfit.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace egowords;

namespace {

Execution path(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

std::vector<double> mixture(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = std::floor(rng.uniform() * 6.0) + 0.1 * rng.normal();
    return x;
}

void BM_EstimateBandwidth(benchmark::State& state) {
    const auto x = mixture(static_cast<std::size_t>(state.range(1)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_bandwidth(x, 0.3, path(state)));
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_MeanShift(benchmark::State& state) {
    const auto x = mixture(static_cast<std::size_t>(state.range(1)), 2);
    MeanShiftConfig cfg;
    cfg.execution = path(state);
    for (auto _ : state) benchmark::DoNotOptimize(mean_shift_1d(x, cfg).modes.size());
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_FitPowerLaw(benchmark::State& state) {
    const auto x = generate_power_law_samples(2.5, 1.0, static_cast<std::size_t>(state.range(1)), 3);
    TailFitConfig cfg;
    cfg.execution = path(state);
    for (auto _ : state) benchmark::DoNotOptimize(fit_powerlaw(x, cfg).alpha);
}

void BM_Bootstrap(benchmark::State& state) {
    const auto x = generate_power_law_samples(2.5, 1.0, static_cast<std::size_t>(state.range(1)), 4);
    TailFitConfig cfg;
    cfg.execution = path(state);
    const auto fit = fit_powerlaw(x, cfg);
    for (auto _ : state) benchmark::DoNotOptimize(bootstrap_pvalue(x, fit, 20, 5, cfg));
}

} // namespace

BENCHMARK(BM_EstimateBandwidth)->ArgsProduct({{0, 1}, {1000, 10000}});
BENCHMARK(BM_MeanShift)->ArgsProduct({{0, 1}, {500, 5000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitPowerLaw)->ArgsProduct({{0, 1}, {1000, 10000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bootstrap)->ArgsProduct({{0, 1}, {1000}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
