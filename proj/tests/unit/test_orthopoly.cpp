#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "dppmc/error.hpp"
#include "dppmc/orthopoly.hpp"
#include "dppmc/quadrature.hpp"

using namespace dppmc;

namespace {

using Rational = boost::multiprecision::cpp_rational;
using Poly = std::vector<Rational>;  // coefficient of x^j at index j

// Monic orthogonal polynomials by the Stieltjes procedure in exact rational arithmetic,
// given the moments of a probability measure. Returns alpha_k^2 (= a_k^2) and b_k.
struct ExactRecurrence {
    std::vector<Rational> a_sq;
    std::vector<Rational> b;
};

ExactRecurrence stieltjes(const std::vector<Rational>& moments, std::size_t n) {
    auto inner = [&](const Poly& p, const Poly& q, std::size_t shift) {
        Rational s = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            for (std::size_t j = 0; j < q.size(); ++j) s += p[i] * q[j] * moments.at(i + j + shift);
        }
        return s;
    };
    ExactRecurrence out;
    Poly prev;           // p_{-1} = 0
    Poly cur{Rational(1)};
    Rational prev_norm = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        const Rational norm = inner(cur, cur, 0);
        const Rational bk = inner(cur, cur, 1) / norm;
        const Rational beta = k == 0 ? Rational(0) : norm / prev_norm;
        if (k > 0) out.a_sq.push_back(beta);
        out.b.push_back(bk);
        Poly next(cur.size() + 1, Rational(0));
        for (std::size_t j = 0; j < cur.size(); ++j) {
            next[j + 1] += cur[j];
            next[j] -= bk * cur[j];
        }
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= beta * prev[j];
        prev = cur;
        cur = next;
        prev_norm = norm;
    }
    return out;
}

// Moments of the probability measure proportional to (1-x)^p (1+x)^q dx, p, q integers.
std::vector<Rational> jacobi_integer_moments(int p, int q, std::size_t count) {
    // Expand (1-x)^p (1+x)^q into monomials, then integrate x^j over [-1, 1].
    Poly w{Rational(1)};
    auto mul = [&](const Poly& f, Rational c0, Rational c1) {
        Poly g(f.size() + 1, Rational(0));
        for (std::size_t j = 0; j < f.size(); ++j) {
            g[j] += c0 * f[j];
            g[j + 1] += c1 * f[j];
        }
        return g;
    };
    for (int i = 0; i < p; ++i) w = mul(w, 1, -1);
    for (int i = 0; i < q; ++i) w = mul(w, 1, 1);
    auto mono = [](std::size_t j) {
        return j % 2 ? Rational(0) : Rational(2) / Rational(static_cast<long>(j + 1));
    };
    std::vector<Rational> m(count);
    for (std::size_t k = 0; k < count; ++k) {
        Rational s = 0;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * mono(j + k);
        m[k] = s;
    }
    const Rational total = m[0];
    for (auto& v : m) v /= total;
    return m;
}

double to_double(const Rational& r) { return static_cast<double>(r); }

// (1-x)^a (1+x)^b with xc the signed distance to the nearest endpoint (tanh-sinh convention).
double jacobi_weight(JacobiParams p, double x, double xc) {
    const double one_minus = x >= 0 ? xc : 1.0 - x;
    const double one_plus = x >= 0 ? 1.0 + x : -xc;
    return std::pow(one_minus, p.alpha) * std::pow(one_plus, p.beta);
}

// 2^{a+b+1} Gamma(a+1) Gamma(b+1) / Gamma(a+b+2).
double jacobi_norm(JacobiParams p) {
    return std::pow(2.0, p.alpha + p.beta + 1) * std::tgamma(p.alpha + 1) * std::tgamma(p.beta + 1) /
           std::tgamma(p.alpha + p.beta + 2);
}

}  // namespace

TEST(Recurrence, ChebyshevCoefficients) {
    const auto t = jacobi_recurrence({-0.5, -0.5}, 3);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_DOUBLE_EQ(t.a(0), 1.0 / std::numbers::sqrt2);
    EXPECT_DOUBLE_EQ(t.a(1), 0.5);
    EXPECT_DOUBLE_EQ(t.a(2), 0.5);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(t.b(k), 0.0);
}

TEST(Recurrence, LegendreMatchesExactGramSchmidt) {
    const auto exact = stieltjes(jacobi_integer_moments(0, 0, 40), 12);
    const auto t = jacobi_recurrence({0.0, 0.0}, 12);
    EXPECT_NEAR(t.a(0), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_EQ(t.b(0), 0.0);
    for (std::size_t k = 0; k < 12; ++k) {
        EXPECT_NEAR(t.a(k), std::sqrt(to_double(exact.a_sq[k])), 1e-14) << "k=" << k;
        EXPECT_NEAR(t.b(k), to_double(exact.b[k]), 1e-14) << "k=" << k;
    }
}

TEST(Recurrence, IntegerJacobiMatchesExactGramSchmidt) {
    for (auto [p, q] : {std::pair{1, 2}, std::pair{3, 0}, std::pair{2, 5}}) {
        const auto exact = stieltjes(jacobi_integer_moments(p, q, 40), 10);
        const auto t = jacobi_recurrence({double(p), double(q)}, 10);
        for (std::size_t k = 0; k < 10; ++k) {
            EXPECT_NEAR(t.a(k), std::sqrt(to_double(exact.a_sq[k])), 1e-13)
                << "p=" << p << " q=" << q << " k=" << k;
            EXPECT_NEAR(t.b(k), to_double(exact.b[k]), 1e-13) << "p=" << p << " q=" << q << " k=" << k;
        }
    }
}

TEST(Recurrence, SpecialTablesAgreeWithGeneralFormula) {
    const auto c = chebyshev_recurrence(20);
    const auto cj = jacobi_recurrence({-0.5, -0.5}, 20);
    const auto l = legendre_recurrence(20);
    const auto lj = jacobi_recurrence({0.0, 0.0}, 20);
    for (std::size_t k = 0; k < 20; ++k) {
        EXPECT_NEAR(c.a(k), cj.a(k), 1e-15);
        EXPECT_NEAR(l.a(k), lj.a(k), 1e-15);
        EXPECT_NEAR(l.b(k), lj.b(k), 1e-15);
    }
}

TEST(Recurrence, NevaiLimit) {
    const auto c = chebyshev_recurrence(50);
    const auto dc = nevai_diagnostic(c, 1);
    EXPECT_EQ(dc.a_dev, 0.0);
    EXPECT_EQ(dc.b_dev, 0.0);

    const auto l = legendre_recurrence(400);
    const auto d10 = nevai_diagnostic(l, 10);
    EXPECT_LT(d10.a_dev, 0.01);
    EXPECT_LT(d10.b_dev, 0.01);
    const auto d100 = nevai_diagnostic(l, 100);
    EXPECT_LT(d100.a_dev, 1e-4);
    EXPECT_LT(d100.b_dev, 1e-4);
}

TEST(Recurrence, RejectsInvalidParameters) {
    EXPECT_THROW((void)jacobi_recurrence({-1.0, 0.0}, 5), DomainError);
    EXPECT_THROW((void)jacobi_recurrence({0.0, -1.5}, 5), DomainError);
    EXPECT_THROW((void)jacobi_recurrence({0.0, 0.0}, 0), DomainError);
    EXPECT_THROW(RecurrenceTable({0.5, -0.1}, {0.0, 0.0}, FamilyKind::custom), DomainError);
}

TEST(Recurrence, ExtendCustomThrows) {
    const RecurrenceTable custom({0.5, 0.5}, {0.0, 0.0}, FamilyKind::custom);
    EXPECT_THROW((void)extend_recurrence(custom, 10), RangeError);
    const auto longer = extend_recurrence(jacobi_recurrence({0.3, -0.2}, 4), 12);
    EXPECT_EQ(longer.size(), 12u);
    EXPECT_NEAR(longer.a(7), jacobi_recurrence({0.3, -0.2}, 12).a(7), 1e-15);
}

TEST(EvalPhi, ChebyshevClosedForm) {
    const auto t = chebyshev_recurrence(8);
    EXPECT_EQ(eval_phi(t, 0, 0.37), 1.0);
    EXPECT_NEAR(eval_phi(t, 1, 0.5), std::numbers::sqrt2 / 2.0, 1e-15);
    EXPECT_NEAR(eval_phi(t, 2, 0.5), -std::numbers::sqrt2 / 2.0, 1e-15);
    for (double theta : {0.1, 0.7, 1.3, 2.9}) {
        const double x = std::cos(theta);
        for (std::size_t k = 1; k < 8; ++k) {
            EXPECT_NEAR(eval_phi(t, k, x), std::numbers::sqrt2 * std::cos(k * theta), 1e-13);
        }
    }
}

TEST(EvalPhi, DegreeMustBeInTable) {
    const auto t = chebyshev_recurrence(4);
    EXPECT_NO_THROW((void)eval_phi(t, 3, 0.1));
    EXPECT_THROW((void)eval_phi(t, 4, 0.1), RangeError);
}

TEST(EvalPhi, OrthonormalUnderIndependentQuadrature) {
    // Tanh-sinh on the explicit weight, fed the distance to the nearest endpoint so the
    // singular factors keep full precision.
    boost::math::quadrature::tanh_sinh<double> integrator;
    for (JacobiParams p : {JacobiParams{0.3, -0.2}, JacobiParams{-0.5, 0.5}, JacobiParams{2.0, 0.7}}) {
        const auto t = jacobi_recurrence(p, 8);
        const double c = jacobi_norm(p);
        for (std::size_t i = 0; i < 8; ++i) {
            for (std::size_t j = i; j < 8; ++j) {
                const double v = integrator.integrate(
                    [&](double x, double xc) {
                        return eval_phi(t, i, x) * eval_phi(t, j, x) * jacobi_weight(p, x, xc) / c;
                    },
                    -1.0, 1.0, 1e-14);
                EXPECT_NEAR(v, i == j ? 1.0 : 0.0, 1e-11) << p.alpha << "," << p.beta << " " << i << "," << j;
            }
        }
    }
}

TEST(EvalPhi, DensityIsNormalised) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    for (JacobiParams p : {JacobiParams{0.3, -0.2}, JacobiParams{-0.7, 1.5}, JacobiParams{4.0, 4.0}}) {
        const double mass = integrator.integrate([&](double x, double xc) { return jacobi_weight(p, x, xc); },
                                                 -1.0, 1.0, 1e-14);
        EXPECT_NEAR(jacobi_log_normalization(p), std::log(mass), 1e-12);
        const auto t = jacobi_recurrence(p, 2);
        for (double x : {-0.9, -0.2, 0.0, 0.55, 0.99}) {
            EXPECT_NEAR(t.density(x), std::pow(1 - x, p.alpha) * std::pow(1 + x, p.beta) / mass, 1e-12 * t.density(x));
        }
    }
    EXPECT_NEAR(jacobi_log_normalization({0.3, -0.2}), std::log(jacobi_norm({0.3, -0.2})), 1e-14);
}

TEST(InnerProduct, Orthonormality) {
    const auto t = chebyshev_recurrence(10);
    EXPECT_DOUBLE_EQ(inner_product_x_power(t, 0, 3, 3), 1.0);
    EXPECT_DOUBLE_EQ(inner_product_x_power(t, 0, 3, 4), 0.0);
    EXPECT_DOUBLE_EQ(inner_product_x_power(t, 1, 2, 3), 0.5);
    EXPECT_EQ(inner_product_x_power(t, 1, 0, 5), 0.0);
    EXPECT_THROW((void)inner_product_x_power(t, 3, 7, 2), RangeError);
}

TEST(InnerProduct, MatchesGaussQuadrature) {
    const auto t = jacobi_recurrence({0.3, -0.2}, 30);
    const auto rule = gauss_rule(t, 20);
    for (std::size_t m : {1u, 2u, 5u}) {
        for (std::size_t k = 0; k < 6; ++k) {
            for (std::size_t l = 0; l < 6; ++l) {
                double q = 0.0;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    const double x = rule.nodes[i];
                    q += rule.weights[i] * std::pow(x, double(m)) * eval_phi(t, k, x) * eval_phi(t, l, x);
                }
                EXPECT_NEAR(inner_product_x_power(t, m, k, l), q, 1e-13);
            }
        }
    }
}

TEST(Quadrature, GaussRuleIntegratesPolynomialsExactly) {
    const auto t = jacobi_recurrence({0.3, -0.2}, 12);
    const auto rule = gauss_rule(t, 6);
    double total = 0.0;
    for (double w : rule.weights) total += w;
    EXPECT_NEAR(total, 1.0, 1e-14);
    for (std::size_t k = 1; k < 12; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < 6; ++i) s += rule.weights[i] * eval_phi(t, k, rule.nodes[i]);
        EXPECT_NEAR(s, 0.0, 1e-13) << "k=" << k;
    }
}

TEST(Quadrature, GaussLegendreInterval) {
    const auto rule = gauss_legendre(5, 0.0, 2.0);
    double s = 0.0;
    for (std::size_t i = 0; i < 5; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 9);
    EXPECT_NEAR(s, std::pow(2.0, 10) / 10.0, 1e-11);
}

TEST(Density, Equilibrium) {
    EXPECT_NEAR(equilibrium_density(0.0), 1.0 / std::numbers::pi, 1e-16);
    EXPECT_TRUE(std::isinf(equilibrium_density(1.0)));
    EXPECT_NEAR(chebyshev_recurrence(2).density(0.3), equilibrium_density(0.3), 1e-15);
}
