#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "dppmc/sampler.hpp"

namespace dppmc {

// A function on [-1, 1]^d, optionally known to vanish outside [-1+margin, 1-margin]^d.
struct Integrand {
    std::function<double(std::span<const double>)> eval;
    double support_margin = 0.0;

    double operator()(std::span<const double> x) const { return eval(x); }
};

struct Estimate {
    double value = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string measure_id;
};

// sum_i f(x_i) w_i with w_i = 1/K_N(x_i, x_i); unbiased for the integral of f against the
// sampling measure. Throws NumericalError naming the node if f is not finite there.
[[nodiscard]] Estimate estimate(const Integrand& f, const WeightedSample& sample);

// sum_i f(x_i) w_i omega(x_i) / q(x_i) for a sample drawn from the ensemble of q(x)dx;
// unbiased for the integral of f omega dx.
using Density = std::function<double(std::span<const double>)>;
[[nodiscard]] Estimate importance_estimate(const Integrand& f, const Density& omega,
                                           const Density& q, const WeightedSample& sample);

// Kahan-compensated sum.
[[nodiscard]] double compensated_sum(std::span<const double> terms) noexcept;

}  // namespace dppmc
