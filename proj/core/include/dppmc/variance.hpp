#pragma once

// Limiting variances of linear statistics under multivariate OP ensembles, expressed
// through coefficients in the normalised Chebyshev basis T_0 = 1, T_k(cos t) = sqrt(2) cos(kt):
//
//     sigma_f^2       = 1/2 sum_k (k_1 + ... + k_d) fhat(k)^2
//     Omega_{f,w}^2   = sigma_g^2   with g = f w / omega_eq^{(x)d}
//
// and the Dirichlet energy that bounds sigma_f^2 from above.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dppmc/estimator.hpp"
#include "dppmc/multiindex.hpp"

namespace dppmc {

// Dense table of fhat(k) for k in {0..cutoff}^d.
class ChebCoeffs {
public:
    ChebCoeffs(std::size_t d, std::size_t cutoff, std::vector<double> values);

    [[nodiscard]] std::size_t dim() const noexcept { return d_; }
    [[nodiscard]] std::size_t cutoff() const noexcept { return cutoff_; }
    [[nodiscard]] std::size_t count() const noexcept { return values_.size(); }
    // Zero for indices beyond the cutoff.
    [[nodiscard]] double at(const MultiIndex& k) const;
    [[nodiscard]] MultiIndex index(std::size_t flat) const;
    [[nodiscard]] double operator[](std::size_t flat) const { return values_[flat]; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

private:
    std::size_t d_;
    std::size_t cutoff_;
    std::vector<double> values_;  // first coordinate varies slowest
};

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;  // (cutoff * d) * mass of the outermost shell
};

// Coefficients by tensor Gauss-Chebyshev quadrature in angle coordinates with
// `nodes` points per dimension (0 selects max(4 * cutoff, 32)).
[[nodiscard]] ChebCoeffs cheb_coeffs(const std::function<double(std::span<const double>)>& f,
                                     std::size_t d, std::size_t cutoff, std::size_t nodes = 0);

[[nodiscard]] SeriesValue sigma_f_sq(const ChebCoeffs& coeffs);

// sigma^2 of g = f omega / omega_eq^{(x)d}. Throws NumericalError if g is not finite at a node.
[[nodiscard]] SeriesValue omega_f_omega_sq(const Integrand& f, const Density& omega,
                                           std::size_t d, std::size_t cutoff,
                                           std::size_t nodes = 0);

using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

// 1/2 sum_a  int (sqrt(1 - x_a^2) d_a f)^2 d(mu_eq^{(x)d}) by tensor Gauss-Chebyshev quadrature
// with `order` nodes per dimension. Without a gradient, central differences with step 1e-5
// are used (one-sided within a step of the boundary).
[[nodiscard]] double dirichlet_bound(const std::function<double(std::span<const double>)>& f,
                                     const Gradient& gradient, std::size_t d, std::size_t order);

}  // namespace dppmc
