#include "dppmc/experiments.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "dppmc/error.hpp"
#include "dppmc/parallel.hpp"
#include "dppmc/quadrature.hpp"
#include "dppmc/rng.hpp"

namespace dppmc {

namespace {

// Stream path tag for drawing the random Jacobi parameters.
constexpr std::uint64_t kParamsStream = 0x6A61636F6269ULL;

double bump_1d(double x, double epsilon) noexcept {
    const double gap = 1.0 - epsilon - x * x;
    return gap > 0.0 ? std::exp(-1.0 / gap) : 0.0;
}

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

double bump(std::span<const double> x, double epsilon) noexcept {
    double v = 1.0;
    for (double xj : x) {
        v *= bump_1d(xj, epsilon);
        if (v == 0.0) return 0.0;
    }
    return v;
}

Integrand bump_integrand(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("bump: epsilon must lie in (0, 1)");
    return Integrand{[epsilon](std::span<const double> x) { return bump(x, epsilon); }, epsilon};
}

double bump_integral(double epsilon, const ProductMeasure& measure) {
    double total = 1.0;
    for (const auto& marginal : measure.marginals()) {
        double prev = std::numeric_limits<double>::quiet_NaN();
        bool converged = false;
        for (std::size_t n = 64; n <= 8192; n *= 2) {
            const auto rule = gauss_rule(extend_recurrence(marginal, n), n);
            double v = 0.0;
            for (std::size_t i = 0; i < n; ++i) v += rule.weights[i] * bump_1d(rule.nodes[i], epsilon);
            if (std::abs(v - prev) < 1e-10) {
                prev = v;
                converged = true;
                break;
            }
            prev = v;
        }
        if (!converged) throw NumericalError("bump_integral: Gauss rule did not converge");
        total *= prev;
    }
    return total;
}

double kolmogorov_survival(double lambda) noexcept {
    if (!(lambda > 0.0)) return 1.0;
    if (lambda < 1.18) {
        // P(K <= l) = sqrt(2 pi)/l sum_k exp(-(2k-1)^2 pi^2 / (8 l^2))
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double s = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double t = std::exp(-(2.0 * k - 1.0) * (2.0 * k - 1.0) * c);
            s += t;
            if (t < 1e-17) break;
        }
        const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * s;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double t = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 ? 2.0 : -2.0) * t;
        if (t < 1e-17) break;
    }
    return std::clamp(s, 0.0, 1.0);
}

std::optional<double> ks_normality_p(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 8) return std::nullopt;
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0) || !std::isfinite(sd)) return std::nullopt;

    std::vector<double> z(samples.begin(), samples.end());
    std::sort(z.begin(), z.end());
    double dstat = 0.0;
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double cdf = normal_cdf((z[i] - mean) / sd);
        dstat = std::max({dstat, static_cast<double>(i + 1) / dn - cdf, cdf - static_cast<double>(i) / dn});
    }
    return kolmogorov_survival(std::sqrt(dn) * dstat);
}

Regression loglog_regression(std::span<const std::pair<double, double>> points) {
    const std::size_t n = points.size();
    if (n < 3) {
        throw DomainError("loglog_regression: at least 3 points are required (got " +
                          std::to_string(n) + ")");
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (!(sxx > 0.0)) throw DomainError("loglog_regression: abscissae are all equal");

    Regression r;
    r.points = n;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ssr = 0.0;
    for (const auto& [x, y] : points) {
        const double res = y - (r.intercept + r.slope * x);
        ssr += res * res;
    }
    const double dof = static_cast<double>(n - 2);
    const double se = std::sqrt(ssr / dof / sxx);
    const boost::math::students_t dist(dof);
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    r.lower = r.slope - t * se;
    r.upper = r.slope + t * se;
    return r;
}

void ExperimentConfig::validate() const {
    if (dims.empty()) throw ConfigError("config: dims must not be empty");
    for (auto d : dims) {
        if (d < 1 || d > 4) throw ConfigError("config: dimensions must lie in 1..4");
    }
    if (n_grid.empty()) throw ConfigError("config: n_grid must not be empty");
    for (auto n : n_grid) {
        if (n < 1) throw ConfigError("config: every N must be >= 1");
    }
    if (n_repeat < 2) throw ConfigError("config: n_repeat must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("config: epsilon must lie in (0, 1)");
    if (!(ks_alpha >= 0.0 && ks_alpha < 1.0)) throw ConfigError("config: ks_alpha must lie in [0, 1)");
    if (jacobi_policy == JacobiPolicy::fixed && !jacobi_params.empty()) {
        const auto dmax = *std::max_element(dims.begin(), dims.end());
        if (jacobi_params.size() < dmax) {
            throw ConfigError("config: jacobi_params must cover every coordinate up to d = " +
                              std::to_string(dmax));
        }
        for (const auto& p : jacobi_params) {
            if (p.alpha < -0.5 || p.beta < -0.5) {
                throw ConfigError("config: Jacobi parameters must be >= -1/2 for the arcsine proposal");
            }
        }
    }
    try {
        sampler.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");

    static const std::set<std::string> known = {
        "dims", "n_grid", "n_repeat", "epsilon", "jacobi_policy", "jacobi_params", "seed",
        "ks_alpha", "bound_strategy", "safety_factor", "max_rejection_iterations", "threads",
        "replicates_csv", "summary_json"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw ConfigError("config: unknown key '" + key + "'");
    }

    ExperimentConfig c;
    try {
        if (j.contains("dims")) c.dims = j["dims"].get<std::vector<std::size_t>>();
        if (j.contains("n_grid")) c.n_grid = j["n_grid"].get<std::vector<std::size_t>>();
        if (j.contains("n_repeat")) c.n_repeat = j["n_repeat"].get<std::size_t>();
        if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
        if (j.contains("jacobi_policy")) {
            const auto p = j["jacobi_policy"].get<std::string>();
            if (p == "fixed") {
                c.jacobi_policy = JacobiPolicy::fixed;
            } else if (p == "random") {
                c.jacobi_policy = JacobiPolicy::random;
            } else {
                throw ConfigError("config: jacobi_policy must be 'fixed' or 'random'");
            }
        }
        if (j.contains("jacobi_params")) {
            for (const auto& pair : j["jacobi_params"]) {
                const auto ab = pair.get<std::vector<double>>();
                if (ab.size() != 2) throw ConfigError("config: jacobi_params entries are [alpha, beta]");
                c.jacobi_params.push_back({ab[0], ab[1]});
            }
        }
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("ks_alpha")) c.ks_alpha = j["ks_alpha"].get<double>();
        if (j.contains("bound_strategy")) {
            const auto s = j["bound_strategy"].get<std::string>();
            if (s == "analytic") {
                c.sampler.rejection_bound_strategy = BoundStrategy::analytic;
            } else if (s == "empirical-scan") {
                c.sampler.rejection_bound_strategy = BoundStrategy::empirical_scan;
            } else {
                throw ConfigError("config: bound_strategy must be 'analytic' or 'empirical-scan'");
            }
        }
        if (j.contains("safety_factor")) c.sampler.safety_factor = j["safety_factor"].get<double>();
        if (j.contains("max_rejection_iterations")) {
            c.sampler.max_rejection_iterations = j["max_rejection_iterations"].get<std::uint64_t>();
        }
        if (j.contains("threads")) c.threads = j["threads"].get<std::size_t>();
        if (j.contains("replicates_csv")) c.replicates_csv = j["replicates_csv"].get<std::string>();
        if (j.contains("summary_json")) c.summary_json = j["summary_json"].get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str());
}

std::vector<JacobiParams> experiment_params(const ExperimentConfig& config, std::size_t d) {
    std::vector<JacobiParams> params;
    if (config.jacobi_policy == JacobiPolicy::fixed) {
        if (config.jacobi_params.empty()) return std::vector<JacobiParams>(d, {-0.5, -0.5});
        return {config.jacobi_params.begin(),
                config.jacobi_params.begin() + static_cast<std::ptrdiff_t>(d)};
    }
    RngStream rng(config.seed, {kParamsStream, d});
    params.push_back({-0.5, -0.5});
    for (std::size_t j = 1; j < d; ++j) {
        const double a = rng.uniform() - 0.5;
        const double b = rng.uniform() - 0.5;
        params.push_back({a, b});
    }
    return params;
}

std::vector<std::size_t> DimensionResult::retained_n() const {
    std::vector<std::size_t> out;
    for (const auto& c : cells) {
        if (c.included) out.push_back(c.n);
    }
    return out;
}

ExperimentResult run_variance_decay(const ExperimentConfig& config,
                                    const ProgressCallback& progress) {
    config.validate();
    const std::size_t threads = resolve_threads(config.threads);
    const Integrand f = bump_integrand(config.epsilon);

    ExperimentResult result;
    for (std::size_t d : config.dims) {
        DimensionResult dim;
        dim.d = d;
        dim.params = experiment_params(config, d);
        dim.theoretical_slope = -1.0 - 1.0 / static_cast<double>(d);
        const ProductMeasure measure = ProductMeasure::jacobi(dim.params);
        dim.truth = bump_integral(config.epsilon, measure);

        for (std::size_t n : config.n_grid) {
            if (progress) progress(d, n);
            const CDKernel kernel(measure, n);
            const double bound = rejection_bound(kernel, config.sampler);
            CellResult cell;
            cell.n = n;
            cell.estimates.resize(config.n_repeat);
            cell.stream_ids.resize(config.n_repeat);
            parallel_for(config.n_repeat, threads, [&](std::size_t r) {
                RngStream rng(config.seed, {d, n, r});
                cell.stream_ids[r] = rng.stream_id();
                const auto s = sample(kernel, bound, config.sampler, rng);
                cell.estimates[r] = estimate(f, s).value;
            });
            const double m = compensated_sum(cell.estimates) / static_cast<double>(config.n_repeat);
            double ss = 0.0;
            for (double e : cell.estimates) ss += (e - m) * (e - m);
            cell.mean = m;
            cell.variance = ss / static_cast<double>(config.n_repeat - 1);
            cell.ks_p = ks_normality_p(cell.estimates);
            cell.included = cell.ks_p.has_value() && *cell.ks_p > config.ks_alpha &&
                            cell.variance > 0.0;
            dim.cells.push_back(std::move(cell));
        }

        std::vector<std::pair<double, double>> pts;
        for (const auto& c : dim.cells) {
            if (c.included) {
                pts.emplace_back(std::log(static_cast<double>(c.n)), std::log(c.variance));
            }
        }
        try {
            dim.regression = loglog_regression(pts);
            dim.contains_theoretical = dim.regression->lower <= dim.theoretical_slope &&
                                       dim.theoretical_slope <= dim.regression->upper;
        } catch (const DomainError& e) {
            dim.regression_error = e.what();
        }
        result.dimensions.push_back(std::move(dim));
    }
    return result;
}

void write_replicates_csv(const ExperimentResult& result, std::ostream& out) {
    const auto old_precision = out.precision(17);
    out << "d,N,replicate,estimate,seed_stream_id\n";
    for (const auto& dim : result.dimensions) {
        for (const auto& cell : dim.cells) {
            for (std::size_t r = 0; r < cell.estimates.size(); ++r) {
                out << dim.d << ',' << cell.n << ',' << r << ',' << cell.estimates[r] << ','
                    << cell.stream_ids[r] << '\n';
            }
        }
    }
    out.precision(old_precision);
}

std::string summary_json(const ExperimentConfig& config, const ExperimentResult& result) {
    using nlohmann::json;
    json root;
    root["config"] = {{"dims", config.dims},
                      {"n_grid", config.n_grid},
                      {"n_repeat", config.n_repeat},
                      {"epsilon", config.epsilon},
                      {"seed", config.seed},
                      {"ks_alpha", config.ks_alpha},
                      {"jacobi_policy",
                       config.jacobi_policy == JacobiPolicy::fixed ? "fixed" : "random"}};
    json dims = json::array();
    for (const auto& dim : result.dimensions) {
        json o;
        o["d"] = dim.d;
        json params = json::array();
        for (const auto& p : dim.params) params.push_back({p.alpha, p.beta});
        o["jacobi_params"] = params;
        o["truth"] = dim.truth;
        o["theoretical"] = dim.theoretical_slope;
        if (dim.regression) {
            o["slopes"] = {{"estimate", dim.regression->slope},
                           {"intercept", dim.regression->intercept}};
            o["interval"] = {dim.regression->lower, dim.regression->upper};
            o["contains_theoretical"] = dim.contains_theoretical;
        } else {
            o["slopes"] = nullptr;
            o["interval"] = nullptr;
            o["contains_theoretical"] = false;
            o["regression_error"] = dim.regression_error;
        }
        o["interval_label"] = "95% CI (OLS)";
        o["retained_N"] = dim.retained_n();
        json ks = json::object();
        json var = json::object();
        json mean = json::object();
        for (const auto& c : dim.cells) {
            const auto key = std::to_string(c.n);
            ks[key] = c.ks_p ? json(*c.ks_p) : json(nullptr);
            var[key] = c.variance;
            mean[key] = c.mean;
        }
        o["ks_p"] = ks;
        o["variance"] = var;
        o["mean"] = mean;
        dims.push_back(std::move(o));
    }
    root["results"] = dims;
    return root.dump(2);
}

}  // namespace dppmc
