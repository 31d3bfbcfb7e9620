// dppmc: command-line front end for the ensemble quadrature library.
//
//   dppmc run --config <path>
//   dppmc sample --d <int> --n <int> --measure jacobi:<a,b;...> --seed <u64> --out <csv>
//   dppmc variance --f bump --eps <real> --d <int> --cutoff <int>
//
// Exit codes: 0 success, 2 configuration/usage error, 3 numerical error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "dppmc/error.hpp"
#include "dppmc/experiments.hpp"
#include "dppmc/kernel.hpp"
#include "dppmc/sampler.hpp"
#include "dppmc/variance.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// "jacobi:a,b;a,b;..." with either one pair (applied to every coordinate) or d pairs.
std::vector<dppmc::JacobiParams> parse_measure(const std::string& text, std::size_t d) {
    const std::string prefix = "jacobi:";
    if (text.rfind(prefix, 0) != 0) {
        throw dppmc::ConfigError("--measure must start with 'jacobi:' (got '" + text + "')");
    }
    std::vector<dppmc::JacobiParams> params;
    std::stringstream pairs(text.substr(prefix.size()));
    std::string pair;
    while (std::getline(pairs, pair, ';')) {
        if (pair.empty()) continue;
        const auto comma = pair.find(',');
        if (comma == std::string::npos) {
            throw dppmc::ConfigError("--measure: expected 'alpha,beta', got '" + pair + "'");
        }
        try {
            std::size_t used_a = 0;
            std::size_t used_b = 0;
            const std::string sa = pair.substr(0, comma);
            const std::string sb = pair.substr(comma + 1);
            const double a = std::stod(sa, &used_a);
            const double b = std::stod(sb, &used_b);
            if (used_a != sa.size() || used_b != sb.size()) throw std::invalid_argument(pair);
            params.push_back({a, b});
        } catch (const std::logic_error&) {
            throw dppmc::ConfigError("--measure: cannot parse '" + pair + "'");
        }
    }
    if (params.size() == 1) params.resize(d, params.front());
    if (params.size() != d) {
        throw dppmc::ConfigError("--measure: need 1 or " + std::to_string(d) + " parameter pairs, got " +
                                 std::to_string(params.size()));
    }
    for (const auto& p : params) {
        try {
            p.validate();
        } catch (const dppmc::Error& e) {
            throw dppmc::ConfigError(e.what());
        }
    }
    return params;
}

int cmd_run(const std::string& config_path) {
    const auto config = dppmc::load_experiment_config(config_path);
    const auto result = dppmc::run_variance_decay(config, [](std::size_t d, std::size_t n) {
        std::cerr << "d=" << d << " N=" << n << '\n';
    });

    if (!config.replicates_csv.empty()) {
        std::ofstream csv(config.replicates_csv);
        if (!csv) throw dppmc::ConfigError("cannot write '" + config.replicates_csv + "'");
        dppmc::write_replicates_csv(result, csv);
    }
    const std::string summary = dppmc::summary_json(config, result);
    if (!config.summary_json.empty()) {
        std::ofstream out(config.summary_json);
        if (!out) throw dppmc::ConfigError("cannot write '" + config.summary_json + "'");
        out << summary << '\n';
    } else {
        std::cout << summary << '\n';
    }

    int code = 0;
    for (const auto& dim : result.dimensions) {
        if (!dim.regression) {
            std::cerr << "d=" << dim.d << ": regression degenerate: " << dim.regression_error << '\n';
            code = kExitNumerical;
        }
    }
    return code;
}

int cmd_sample(std::size_t d, std::size_t n, const std::string& measure_arg, std::uint64_t seed,
               const std::string& out_path) {
    if (d == 0) throw dppmc::ConfigError("--d must be >= 1");
    if (n == 0) throw dppmc::ConfigError("--n must be >= 1");
    const auto measure = dppmc::ProductMeasure::jacobi(parse_measure(measure_arg, d));
    const dppmc::CDKernel kernel(measure, n);
    dppmc::SamplerConfig config;
    config.rng_seed = seed;
    const auto s = dppmc::sample(kernel, config);

    std::ofstream out(out_path);
    if (!out) throw dppmc::ConfigError("cannot write '" + out_path + "'");
    out.precision(17);
    for (std::size_t j = 0; j < d; ++j) out << 'x' << (j + 1) << ',';
    out << "weight\n";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        for (double v : s.points[i]) out << v << ',';
        out << s.weights[i] << '\n';
    }
    return 0;
}

int cmd_variance(const std::string& f_name, double eps, std::size_t d, std::size_t cutoff,
                 const std::string& measure_arg) {
    if (f_name != "bump") throw dppmc::ConfigError("--f: only 'bump' is available");
    if (d == 0 || d > 4) throw dppmc::ConfigError("--d must lie in 1..4");
    if (cutoff == 0) throw dppmc::ConfigError("--cutoff must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw dppmc::ConfigError("--eps must lie in (0, 1)");

    const auto f = dppmc::bump_integrand(eps);
    const auto measure = measure_arg.empty()
                             ? dppmc::ProductMeasure::equilibrium(d)
                             : dppmc::ProductMeasure::jacobi(parse_measure(measure_arg, d));

    const auto coeffs = dppmc::cheb_coeffs(f.eval, d, cutoff);
    const auto sigma = dppmc::sigma_f_sq(coeffs);
    const auto omega = dppmc::omega_f_omega_sq(
        f, [&measure](std::span<const double> x) { return measure.density(x); }, d, cutoff);

    const dppmc::Gradient grad = [eps](std::span<const double> x, std::span<double> g) {
        const double v = dppmc::bump(x, eps);
        for (std::size_t a = 0; a < x.size(); ++a) {
            const double gap = 1.0 - eps - x[a] * x[a];
            g[a] = gap > 0.0 ? v * (-2.0 * x[a] / (gap * gap)) : 0.0;
        }
    };
    const double dirichlet = dppmc::dirichlet_bound(f.eval, grad, d, std::max<std::size_t>(64, 2 * cutoff));

    nlohmann::json j;
    j["f"] = f_name;
    j["eps"] = eps;
    j["d"] = d;
    j["cutoff"] = cutoff;
    j["measure"] = measure.id();
    j["sigma2"] = sigma.value;
    j["sigma2_tail_bound"] = sigma.tail_bound;
    j["omega2"] = omega.value;
    j["omega2_tail_bound"] = omega.tail_bound;
    j["dirichlet_bound"] = dirichlet;
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo quadrature with orthogonal-polynomial ensembles"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Variance-decay experiment from a JSON config");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();

    std::size_t s_d = 1;
    std::size_t s_n = 1;
    std::string s_measure = "jacobi:-0.5,-0.5";
    std::uint64_t s_seed = 0;
    std::string s_out;
    auto* smp = app.add_subcommand("sample", "Draw one weighted ensemble and write it as CSV");
    smp->add_option("--d", s_d, "Dimension")->required();
    smp->add_option("--n", s_n, "Number of nodes")->required();
    smp->add_option("--measure", s_measure, "jacobi:<alpha,beta;...>");
    smp->add_option("--seed", s_seed, "RNG seed");
    smp->add_option("--out", s_out, "Output CSV")->required();

    std::string v_f = "bump";
    double v_eps = 0.05;
    std::size_t v_d = 1;
    std::size_t v_cutoff = 64;
    std::string v_measure;
    auto* var = app.add_subcommand("variance", "Limiting variances and Dirichlet bound as JSON");
    var->add_option("--f", v_f, "Integrand (bump)");
    var->add_option("--eps", v_eps, "Bump margin");
    var->add_option("--d", v_d, "Dimension");
    var->add_option("--cutoff", v_cutoff, "Chebyshev truncation degree per coordinate");
    var->add_option("--measure", v_measure, "jacobi:<alpha,beta;...> for the weighted variance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return cmd_run(config_path);
        if (*smp) return cmd_sample(s_d, s_n, s_measure, s_seed, s_out);
        if (*var) return cmd_variance(v_f, v_eps, v_d, v_cutoff, v_measure);
    } catch (const dppmc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const dppmc::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const dppmc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
