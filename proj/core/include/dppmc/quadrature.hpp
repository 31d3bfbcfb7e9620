#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dppmc/orthopoly.hpp"

namespace dppmc {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;  // sum to the total mass of the reference measure
};

// n-point Gauss rule for the (probability) measure of `table` via Golub-Welsch.
// Exact for polynomials of degree < 2n. Requires n <= table.size().
[[nodiscard]] QuadratureRule gauss_rule(const RecurrenceTable& table, std::size_t n);

// Gauss-Legendre rule for Lebesgue measure on [lo, hi].
[[nodiscard]] QuadratureRule gauss_legendre(std::size_t n, double lo, double hi);

// Gauss-Chebyshev rule in angle coordinates: theta_i = (2i+1) pi / (2n), weight 1/n each,
// for the measure d(theta)/pi on [0, pi]. Exact for cosine polynomials of degree < 2n.
[[nodiscard]] QuadratureRule gauss_chebyshev_theta(std::size_t n);

// Sum over the tensor grid rules[0] x ... x rules[d-1] of prod(weights) * f(point).
[[nodiscard]] double tensor_integrate(std::span<const QuadratureRule> rules,
                                      const std::function<double(std::span<const double>)>& f);

}  // namespace dppmc
