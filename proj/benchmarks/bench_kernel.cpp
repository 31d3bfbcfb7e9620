#include <benchmark/benchmark.h>

#include <random>

#include "dppmc/kernel.hpp"
#include "dppmc/multiindex.hpp"
#include "dppmc/orthopoly.hpp"

using namespace dppmc;

static void BM_EvalPhiAll(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto t = jacobi_recurrence({0.3, -0.2}, n);
    std::vector<double> out(n);
    double x = 0.123;
    for (auto _ : state) {
        eval_phi_all(t, x, out);
        benchmark::DoNotOptimize(out.data());
        x = -x;
    }
}
BENCHMARK(BM_EvalPhiAll)->Arg(16)->Arg(128)->Arg(1024);

static void BM_KernelDiag(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto n = static_cast<std::size_t>(state.range(1));
    const CDKernel k(ProductMeasure::equilibrium(d), n);
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Point x(d);
    for (auto _ : state) {
        for (auto& v : x) v = u(gen);
        benchmark::DoNotOptimize(k.diag(x));
    }
}
BENCHMARK(BM_KernelDiag)->Args({1, 100})->Args({2, 100})->Args({3, 100})->Args({2, 1000});

static void BM_BasisEnumeration(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        const MultiIndexBasis basis(3);
        benchmark::DoNotOptimize(basis.at(n - 1));
    }
}
BENCHMARK(BM_BasisEnumeration)->Arg(1000)->Arg(30000);
