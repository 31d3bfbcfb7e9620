#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "dppmc/error.hpp"
#include "dppmc/estimator.hpp"
#include "dppmc/rng.hpp"
#include "dppmc/sampler.hpp"

using namespace dppmc;

namespace {

struct MeanSe {
    double mean;
    double se;
};

template <class Fn>
MeanSe replicate(std::size_t reps, Fn fn) {
    std::vector<double> v(reps);
    for (std::size_t r = 0; r < reps; ++r) v[r] = fn(r);
    double m = 0.0;
    for (double e : v) m += e;
    m /= reps;
    double ss = 0.0;
    for (double e : v) ss += (e - m) * (e - m);
    return {m, std::sqrt(ss / (reps - 1) / reps)};
}

const Integrand square{[](std::span<const double> x) { return x[0] * x[0]; }};

}  // namespace

TEST(Estimate, TrivialIntegrands) {
    const CDKernel k1(ProductMeasure::jacobi({{0.3, -0.2}}), 1);
    SamplerConfig cfg;
    cfg.rng_seed = 4;
    const auto s1 = sample(k1, cfg);
    EXPECT_EQ(estimate(Integrand{[](std::span<const double>) { return 1.0; }}, s1).value, 1.0);

    const CDKernel k(ProductMeasure::equilibrium(2), 10);
    const auto s = sample(k, cfg);
    const auto e = estimate(Integrand{[](std::span<const double>) { return 0.0; }}, s);
    EXPECT_EQ(e.value, 0.0);
    EXPECT_EQ(e.n, 10u);
}

TEST(Estimate, NonFiniteIntegrandIsReported) {
    const CDKernel k(ProductMeasure::equilibrium(1), 4);
    const auto s = sample(k, SamplerConfig{});
    const Integrand bad{[](std::span<const double>) { return std::numeric_limits<double>::quiet_NaN(); }};
    EXPECT_THROW((void)estimate(bad, s), NumericalError);
}

TEST(Estimate, UnbiasedSecondMoment) {
    const CDKernel k(ProductMeasure::equilibrium(1), 8);
    const SamplerConfig cfg;
    const double b = rejection_bound(k, cfg);
    const auto r = replicate(10000, [&](std::size_t i) {
        RngStream rng(77, {i});
        return estimate(square, sample(k, b, cfg, rng)).value;
    });
    EXPECT_LT(std::abs(r.mean - 0.5), 4.0 * r.se);
}

TEST(ImportanceEstimate, EqualDensitiesReduceToPlainEstimate) {
    const auto m = ProductMeasure::jacobi({{0.3, -0.2}});
    const CDKernel k(m, 6);
    SamplerConfig cfg;
    cfg.rng_seed = 8;
    const auto s = sample(k, cfg);
    const Density w = [&](std::span<const double> x) { return m.density(x); };
    EXPECT_EQ(importance_estimate(square, w, w, s).value, estimate(square, s).value);
    EXPECT_EQ(importance_estimate(Integrand{[](std::span<const double>) { return 0.0; }}, w, w, s).value, 0.0);
}

TEST(ImportanceEstimate, UniformTargetFromArcsineEnsemble) {
    const auto m = ProductMeasure::equilibrium(1);
    const CDKernel k(m, 8);
    const SamplerConfig cfg;
    const double b = rejection_bound(k, cfg);
    const Density omega = [](std::span<const double>) { return 0.5; };
    const Density q = [&](std::span<const double> x) { return m.density(x); };
    const auto r = replicate(10000, [&](std::size_t i) {
        RngStream rng(91, {i});
        return importance_estimate(square, omega, q, sample(k, b, cfg, rng)).value;
    });
    EXPECT_LT(std::abs(r.mean - 1.0 / 3.0), 4.0 * r.se);
}

TEST(ImportanceEstimate, ZeroProposalDensity) {
    const CDKernel k(ProductMeasure::equilibrium(1), 3);
    const auto s = sample(k, SamplerConfig{});
    const Density one = [](std::span<const double>) { return 1.0; };
    const Density zero = [](std::span<const double>) { return 0.0; };
    EXPECT_THROW((void)importance_estimate(square, one, zero, s), DomainError);
}

TEST(CompensatedSum, CancelsRoundOff) {
    std::vector<double> v(1000001, 1e-16);
    v[0] = 1.0;
    EXPECT_NEAR(compensated_sum(v), 1.0 + 1e-10, 1e-15);
}
