#pragma once

// Exact sampling of the N-point multivariate orthogonal polynomial ensemble by the
// chain rule: point i is drawn from the density
//
//     K_N(x,x) - k(x)^T K^{-1} k(x)   times  omega(x) / (N - i + 1)
//
// where k(x) = (K_N(x_1,x), ..., K_N(x_{i-1},x)) and K is the Gram matrix of the points
// accepted so far. Each step is a rejection sampler with the product arcsine proposal.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dppmc/kernel.hpp"
#include "dppmc/rng.hpp"

namespace dppmc {

enum class BoundStrategy { analytic, empirical_scan };

struct SamplerConfig {
    BoundStrategy rejection_bound_strategy = BoundStrategy::empirical_scan;
    double safety_factor = 1.2;
    std::uint64_t max_rejection_iterations = 10'000'000;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

struct WeightedSample {
    std::size_t dim = 0;
    std::vector<Point> points;
    std::vector<double> weights;               // 1 / K_N(x_i, x_i)
    std::vector<std::uint64_t> proposals;      // proposals drawn at each chain step
    double bound = 0.0;                        // envelope constant used
};

// State of the chain after i-1 acceptances: accepted points, their feature vectors and
// the lower Cholesky factor of their Gram matrix, grown one row per acceptance.
class ChainState {
public:
    explicit ChainState(const CDKernel& kernel);

    [[nodiscard]] std::size_t accepted() const noexcept { return points_.size(); }
    [[nodiscard]] const std::vector<Point>& points() const noexcept { return points_; }

    // Squared norm of the projection of K_N(x, .) onto the orthocomplement of the span of
    // accepted K_N(x_l, .). Returns K_N(x, x) when nothing has been accepted yet.
    [[nodiscard]] double conditional(std::span<const double> x) const;

    // Appends x. Throws NumericalError if the Gram matrix would become singular
    // (x duplicates, or nearly duplicates, an accepted point).
    void accept(std::span<const double> x);

    // Lower Cholesky factor, row-major packed: row r holds r+1 entries.
    [[nodiscard]] const std::vector<double>& cholesky_packed() const noexcept { return chol_; }

    // Reusable scratch for evaluate()/commit(); lets the sampler reuse the features and
    // the triangular solve of an accepted proposal.
    struct Evaluation {
        std::vector<double> features;
        std::vector<double> solved;  // L^{-1} k(x)
        double kxx = 0.0;
        double value = 0.0;          // clamped Schur complement
    };

    void evaluate(std::span<const double> x, Evaluation& ev) const;
    // Schur complement given ev.features and ev.kxx already filled in.
    void evaluate_from_features(Evaluation& ev) const;
    void commit(std::span<const double> x, const Evaluation& ev);

private:
    const CDKernel* kernel_;
    std::vector<Point> points_;
    std::vector<std::vector<double>> features_;
    std::vector<double> chol_;
};

[[nodiscard]] inline double conditional_unnormalized_density(const ChainState& state,
                                                             std::span<const double> x) {
    return state.conditional(x);
}

// x_j = cos(pi U_j), U_j uniform on (0, 1): the product arcsine law on (-1, 1)^d.
[[nodiscard]] Point sample_equilibrium_point(RngStream& rng, std::size_t d);

// omega_j(x) / omega_eq(x) for marginal j, finite at the endpoints when alpha, beta >= -1/2.
[[nodiscard]] double arcsine_ratio(const RecurrenceTable& table, double x);

// B with sup_x K_N(x,x) omega(x) / omega_eq(x) <= B. Throws DomainError if some marginal
// has alpha or beta < -1/2 (the ratio is unbounded).
[[nodiscard]] double rejection_bound(const CDKernel& kernel, const SamplerConfig& config);

// One exact draw of the ensemble. Uses RngStream(config.rng_seed).
[[nodiscard]] WeightedSample sample(const CDKernel& kernel, const SamplerConfig& config);

// Same, with a precomputed envelope and a caller-owned stream (for replicate loops).
[[nodiscard]] WeightedSample sample(const CDKernel& kernel, double bound,
                                    const SamplerConfig& config, RngStream& rng);

}  // namespace dppmc
