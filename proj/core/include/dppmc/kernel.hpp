#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dppmc/multiindex.hpp"
#include "dppmc/orthopoly.hpp"

namespace dppmc {

using Point = std::vector<double>;

// mu = mu_1 x ... x mu_d, each marginal a probability measure on [-1, 1] with a density.
class ProductMeasure {
public:
    explicit ProductMeasure(std::vector<RecurrenceTable> marginals);

    static ProductMeasure equilibrium(std::size_t d);
    static ProductMeasure jacobi(const std::vector<JacobiParams>& params);

    [[nodiscard]] std::size_t dim() const noexcept { return marginals_.size(); }
    [[nodiscard]] const RecurrenceTable& marginal(std::size_t j) const { return marginals_.at(j); }
    [[nodiscard]] const std::vector<RecurrenceTable>& marginals() const noexcept {
        return marginals_;
    }

    // omega(x) = prod_j omega_j(x_j).
    [[nodiscard]] double density(std::span<const double> x) const;
    // True when every marginal is the arcsine law.
    [[nodiscard]] bool is_equilibrium() const noexcept;
    // Short identifier, e.g. "jacobi(-0.5,-0.5;0.1,0.2)".
    [[nodiscard]] std::string id() const;

private:
    std::vector<RecurrenceTable> marginals_;
};

// Christoffel-Darboux kernel K_N(x, y) = sum_{k<N} phi_k(x) phi_k(y) of the multivariate
// orthonormal polynomials phi_k = prod_j phi^{(j)}_{b(k)_j}, b the graded-lex bijection.
// Immutable after construction.
class CDKernel {
public:
    CDKernel(ProductMeasure measure, std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return measure_.dim(); }
    [[nodiscard]] const ProductMeasure& measure() const noexcept { return measure_; }
    [[nodiscard]] const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
    // Largest degree used in dimension j among b(0..N-1).
    [[nodiscard]] std::size_t max_degree(std::size_t j) const { return max_degree_.at(j); }
    // Recurrence table of dimension j, long enough for every degree the kernel needs.
    [[nodiscard]] const RecurrenceTable& table(std::size_t j) const { return tables_.at(j); }

    // out[k] = phi_k(x) for k < N.
    void features(std::span<const double> x, std::span<double> out) const;
    [[nodiscard]] std::vector<double> features(std::span<const double> x) const;

    [[nodiscard]] double phi(std::size_t k, std::span<const double> x) const;
    [[nodiscard]] double operator()(std::span<const double> x, std::span<const double> y) const;
    [[nodiscard]] double diag(std::span<const double> x) const;
    // 1 / K_N(x, x). Throws NumericalError when K_N(x, x) is not positive.
    [[nodiscard]] double leverage(std::span<const double> x) const;

    // Univariate kernel sum_{k<m} phi^{(j)}_k(s) phi^{(j)}_k(t) of marginal j.
    [[nodiscard]] double univariate(std::size_t j, std::size_t m, double s, double t) const;

private:
    void check_point(std::span<const double> x) const;

    ProductMeasure measure_;
    std::size_t n_;
    std::vector<MultiIndex> indices_;
    std::vector<std::size_t> max_degree_;
    std::vector<RecurrenceTable> tables_;
};

// Free-function aliases.
[[nodiscard]] inline double eval_multivariate_phi(const CDKernel& kernel, std::size_t k,
                                                  std::span<const double> x) {
    return kernel.phi(k, x);
}
[[nodiscard]] inline double eval_kernel(const CDKernel& kernel, std::span<const double> x,
                                        std::span<const double> y) {
    return kernel(x, y);
}
[[nodiscard]] inline double leverage(const CDKernel& kernel, std::span<const double> x) {
    return kernel.leverage(x);
}

struct ProductIdentity {
    double lhs = 0.0;  // multivariate N-term sum
    double rhs = 0.0;  // product of univariate M-term kernels
};

// Requires kernel.size() == side^d; throws DomainError otherwise.
[[nodiscard]] ProductIdentity product_identity_check(const CDKernel& kernel, std::size_t side,
                                                     std::span<const double> x,
                                                     std::span<const double> y);

}  // namespace dppmc
