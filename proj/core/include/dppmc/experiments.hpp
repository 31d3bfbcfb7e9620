#pragma once

// Variance-decay experiment: replicated ensemble quadrature of a smooth bump over
// product Jacobi measures, Gaussianity screening of the replicates, and a log-log fit of
// the replicate variance against N, compared with the rate -1 - 1/d.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dppmc/estimator.hpp"
#include "dppmc/kernel.hpp"
#include "dppmc/sampler.hpp"

namespace dppmc {

// prod_j exp(-1 / (1 - eps - x_j^2)) on the cube |x_j| < sqrt(1 - eps), 0 elsewhere.
[[nodiscard]] double bump(std::span<const double> x, double epsilon) noexcept;
[[nodiscard]] Integrand bump_integrand(double epsilon);

// Integral of the bump against a product measure. Each marginal is integrated with a Gauss
// rule whose size doubles until successive values agree to 1e-10.
[[nodiscard]] double bump_integral(double epsilon, const ProductMeasure& measure);

// Survival function of the Kolmogorov distribution, P(K > lambda).
[[nodiscard]] double kolmogorov_survival(double lambda) noexcept;

// One-sample KS test of the standardised samples against N(0, 1); returns the asymptotic
// p-value Q(sqrt(n) D). Parameters are estimated from the data, so this is a loose screen.
// nullopt when there are fewer than 8 samples or zero spread.
[[nodiscard]] std::optional<double> ks_normality_p(std::span<const double> samples);

struct Regression {
    double slope = 0.0;
    double intercept = 0.0;
    double lower = 0.0;  // 95% t-interval on the slope
    double upper = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares y = slope * x + intercept. Needs >= 3 points with distinct x
// (DomainError otherwise).
[[nodiscard]] Regression loglog_regression(std::span<const std::pair<double, double>> points);

enum class JacobiPolicy { fixed, random };

struct ExperimentConfig {
    std::vector<std::size_t> dims{1, 2};
    std::vector<std::size_t> n_grid{10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120, 130, 140, 150};
    std::size_t n_repeat = 100;
    double epsilon = 0.05;
    JacobiPolicy jacobi_policy = JacobiPolicy::random;
    // Per-coordinate parameters for the fixed policy; must cover the largest d.
    // Empty means the arcsine law in every coordinate.
    std::vector<JacobiParams> jacobi_params;
    std::uint64_t seed = 0;
    double ks_alpha = 0.05;
    SamplerConfig sampler;
    std::size_t threads = 0;  // 0: DPPMC_THREADS or hardware default
    std::string replicates_csv;
    std::string summary_json;

    void validate() const;
};

// Reads a JSON object; unknown keys are rejected. Throws ConfigError.
[[nodiscard]] ExperimentConfig load_experiment_config(const std::string& path);
[[nodiscard]] ExperimentConfig parse_experiment_config(const std::string& json_text);

// Jacobi parameters used for dimension d under the config's policy.
[[nodiscard]] std::vector<JacobiParams> experiment_params(const ExperimentConfig& config,
                                                          std::size_t d);

struct CellResult {
    std::size_t n = 0;
    std::vector<double> estimates;
    std::vector<std::uint64_t> stream_ids;
    double mean = 0.0;
    double variance = 0.0;  // unbiased, n_repeat - 1 denominator
    std::optional<double> ks_p;
    bool included = false;
};

struct DimensionResult {
    std::size_t d = 0;
    std::vector<JacobiParams> params;
    double truth = 0.0;
    std::vector<CellResult> cells;
    std::optional<Regression> regression;
    std::string regression_error;
    double theoretical_slope = 0.0;
    bool contains_theoretical = false;

    [[nodiscard]] std::vector<std::size_t> retained_n() const;
};

struct ExperimentResult {
    std::vector<DimensionResult> dimensions;
};

using ProgressCallback = std::function<void(std::size_t d, std::size_t n)>;

// Replicate r of cell (d, N) uses RngStream(seed, {d, N, r}), so results do not depend on
// the thread count or on which cells are run.
[[nodiscard]] ExperimentResult run_variance_decay(const ExperimentConfig& config,
                                                  const ProgressCallback& progress = {});

// Columns: d,N,replicate,estimate,seed_stream_id
void write_replicates_csv(const ExperimentResult& result, std::ostream& out);
[[nodiscard]] std::string summary_json(const ExperimentConfig& config,
                                       const ExperimentResult& result);

}  // namespace dppmc
