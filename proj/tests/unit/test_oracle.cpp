#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dppmc/error.hpp"
#include "dppmc/oracle.hpp"

using namespace dppmc;

namespace {

MultiIndex mi(std::initializer_list<std::uint32_t> v) { return MultiIndex(std::vector<std::uint32_t>(v)); }

PolynomialStatistic cheb1(std::uint32_t k) { return PolynomialStatistic::chebyshev(1, {{mi({k}), 1.0}}); }

}  // namespace

TEST(CovExact, ChebyshevDiagonal) {
    const auto eq = ProductMeasure::equilibrium(1);
    for (std::size_t n = 4; n <= 9; ++n) {
        const CDKernel k(eq, n);
        for (std::uint32_t a = 1; a <= 3; ++a) {
            EXPECT_NEAR(cov_exact(cheb1(a), cheb1(a), k), a / 2.0, 1e-12);
        }
        EXPECT_NEAR(cov_exact(cheb1(2), cheb1(3), k), 0.0, 1e-12);
    }
    const auto c = PolynomialStatistic::monomial(1, {{mi({0}), 4.0}});
    EXPECT_NEAR(cov_exact(c, c, CDKernel(eq, 5)), 0.0, 1e-14);
}

TEST(CovExact, MonomialAndChebyshevBasesAgree) {
    const auto m = ProductMeasure::jacobi({{0.3, -0.2}, {-0.5, -0.5}});
    const CDKernel k(m, 11);
    const auto p = PolynomialStatistic::monomial(2, {{mi({2, 1}), 1.5}, {mi({0, 3}), -0.7}, {mi({1, 0}), 0.2}});
    const auto pc = p.to_chebyshev();
    EXPECT_NEAR(cov_exact(p, p, k), cov_exact(pc, pc, k), 1e-12);
    const auto back = pc.to_monomial();
    for (const auto& [idx, c] : p.terms()) EXPECT_NEAR(back.terms().at(idx), c, 1e-14);
    const std::vector<double> x{0.31, -0.58};
    EXPECT_NEAR(p(x), pc(x), 1e-14);
}

TEST(CovExact, SymmetricAndBilinear) {
    const CDKernel k(ProductMeasure::jacobi({{0.1, 0.4}}), 7);
    const auto p = PolynomialStatistic::monomial(1, {{mi({3}), 1.0}, {mi({1}), -2.0}});
    const auto q = PolynomialStatistic::monomial(1, {{mi({2}), 0.5}, {mi({5}), 1.0}});
    const auto pq = PolynomialStatistic::monomial(1, {{mi({3}), 1.0}, {mi({1}), -2.0}, {mi({2}), 0.5}, {mi({5}), 1.0}});
    EXPECT_NEAR(cov_exact(p, q, k), cov_exact(q, p, k), 1e-13);
    EXPECT_NEAR(cov_exact(pq, pq, k), cov_exact(p, p, k) + 2.0 * cov_exact(p, q, k) + cov_exact(q, q, k), 1e-12);
}

TEST(DoubleIntegral, ChebyshevExamples) {
    const CDKernel k(ProductMeasure::equilibrium(1), 5);
    EXPECT_NEAR(var_double_integral(cheb1(2).integrand(), k, 64), 1.0, 1e-6);
    const Integrand x{[](std::span<const double> p) { return p[0]; }};
    EXPECT_NEAR(var_double_integral(x, k, 64), 0.25, 1e-6);
    const Integrand c{[](std::span<const double>) { return 2.0; }};
    EXPECT_NEAR(var_double_integral(c, k, 64), 0.0, 1e-12);
}

TEST(DoubleIntegral, MatchesCovExactInTwoDimensions) {
    const CDKernel k(ProductMeasure::jacobi({{0.3, -0.2}, {0.5, 0.0}}), 9);
    const auto p = PolynomialStatistic::monomial(2, {{mi({2, 1}), 1.0}, {mi({0, 2}), -0.5}});
    EXPECT_NEAR(var_double_integral(p.integrand(), k, 24), cov_exact(p, p, k), 1e-10);
    const CDKernel k3(ProductMeasure::equilibrium(3), 4);
    EXPECT_THROW((void)var_double_integral(p.integrand(), k3, 8), DomainError);
}

TEST(CovLimit, Formula) {
    EXPECT_NEAR(cov_limit_cheby(mi({2, 1}), mi({2, 1})), 1.5, 1e-15);
    EXPECT_EQ(cov_limit_cheby(mi({2, 1}), mi({1, 2})), 0.0);
    EXPECT_EQ(cov_limit_cheby(mi({0, 0}), mi({0, 0})), 0.0);
}

TEST(PolynomialStatistic, GradientMatchesFiniteDifferences) {
    const auto p = PolynomialStatistic::monomial(2, {{mi({3, 1}), 1.0}, {mi({0, 2}), 2.0}});
    const std::vector<double> x{0.4, -0.3};
    std::vector<double> g(2);
    p.gradient(x, g);
    EXPECT_NEAR(g[0], 3 * 0.16 * -0.3, 1e-14);
    EXPECT_NEAR(g[1], 0.064 + 4 * -0.3, 1e-14);
}
