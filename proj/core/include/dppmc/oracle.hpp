#pragma once

// Finite-N ground truths for covariances of linear statistics sum_i P(x_i).

#include <cstddef>
#include <map>
#include <span>

#include "dppmc/estimator.hpp"
#include "dppmc/kernel.hpp"
#include "dppmc/multiindex.hpp"

namespace dppmc {

enum class PolyBasis { monomial, chebyshev };

// A multivariate polynomial stored as multi-index -> coefficient, either in the monomial
// basis x^a or in the normalised Chebyshev basis T_k = prod_j T_{k_j}(x_j).
class PolynomialStatistic {
public:
    using Terms = std::map<MultiIndex, double>;

    PolynomialStatistic(std::size_t d, PolyBasis basis, Terms terms);

    static PolynomialStatistic monomial(std::size_t d, Terms terms) {
        return {d, PolyBasis::monomial, std::move(terms)};
    }
    static PolynomialStatistic chebyshev(std::size_t d, Terms terms) {
        return {d, PolyBasis::chebyshev, std::move(terms)};
    }

    [[nodiscard]] std::size_t dim() const noexcept { return d_; }
    [[nodiscard]] PolyBasis basis() const noexcept { return basis_; }
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    // Largest exponent/degree in coordinate j.
    [[nodiscard]] std::size_t degree(std::size_t j) const;

    [[nodiscard]] PolynomialStatistic to_monomial() const;
    [[nodiscard]] PolynomialStatistic to_chebyshev() const;

    [[nodiscard]] double operator()(std::span<const double> x) const;
    void gradient(std::span<const double> x, std::span<double> out) const;
    [[nodiscard]] Integrand integrand() const;

private:
    std::size_t d_;
    PolyBasis basis_;
    Terms terms_;
};

// Cov[sum P(x_i), sum Q(x_i)] = sum_{n<N} sum_{m>=N} <P phi_n, phi_m> <Q phi_n, phi_m>.
// The m-sum is finite (banded recurrences), so the value is exact up to round-off.
// Custom marginals whose tables are too short raise RangeError.
[[nodiscard]] double cov_exact(const PolynomialStatistic& p, const PolynomialStatistic& q,
                               const CDKernel& kernel);

// 1/2 double integral of (f(x) - f(y))^2 K_N(x, y)^2 mu(dx) mu(dy) by a tensor Gauss rule
// of `order` nodes per dimension. d <= 2 only (DomainError otherwise).
[[nodiscard]] double var_double_integral(const Integrand& f, const CDKernel& kernel,
                                         std::size_t order);

// lim N^{-(1-1/d)} Cov[sum T_k, sum T_l] for the equilibrium product measure.
[[nodiscard]] double cov_limit_cheby(const MultiIndex& k, const MultiIndex& l);

}  // namespace dppmc
