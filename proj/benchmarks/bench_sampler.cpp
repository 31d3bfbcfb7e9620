#include <benchmark/benchmark.h>

#include "dppmc/estimator.hpp"
#include "dppmc/experiments.hpp"
#include "dppmc/rng.hpp"
#include "dppmc/sampler.hpp"

using namespace dppmc;

static void BM_Sample(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto n = static_cast<std::size_t>(state.range(1));
    std::vector<JacobiParams> params(d, {-0.5, -0.5});
    if (d > 1) params[1] = {0.3, -0.2};
    const CDKernel k(ProductMeasure::jacobi(params), n);
    const SamplerConfig cfg;
    const double bound = rejection_bound(k, cfg);
    std::uint64_t r = 0;
    for (auto _ : state) {
        RngStream rng(1, {r++});
        benchmark::DoNotOptimize(sample(k, bound, cfg, rng));
    }
}
BENCHMARK(BM_Sample)->Args({1, 20})->Args({1, 100})->Args({2, 50})->Args({2, 100})->Args({3, 100})
    ->Unit(benchmark::kMillisecond);

static void BM_RejectionBoundScan(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const CDKernel k(ProductMeasure::jacobi({{0.3, -0.2}, {0.1, 0.4}}), n);
    const SamplerConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(rejection_bound(k, cfg));
}
BENCHMARK(BM_RejectionBoundScan)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);

static void BM_BumpEstimate(benchmark::State& state) {
    const CDKernel k(ProductMeasure::equilibrium(2), 100);
    SamplerConfig cfg;
    const auto s = sample(k, cfg);
    const auto f = bump_integrand(0.05);
    for (auto _ : state) benchmark::DoNotOptimize(estimate(f, s));
}
BENCHMARK(BM_BumpEstimate);
BENCHMARK_MAIN();
