#include "dppmc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "dppmc/error.hpp"

namespace dppmc {

namespace {

constexpr double kClampTolerance = 1e-10;  // relative to max(1, K_N(x,x))
constexpr double kBoundSlack = 1e-9;       // round-off allowance when checking the envelope

std::string format_point(std::span<const double> x) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t j = 0; j < x.size(); ++j) os << (j ? ", " : "") << x[j];
    os << ')';
    return os.str();
}

bool jacobi_within_half(const RecurrenceTable& t) {
    if (t.kind() == FamilyKind::custom) return false;
    const auto& p = t.jacobi_params();
    return std::abs(p.alpha) <= 0.5 && std::abs(p.beta) <= 0.5;
}

// sup_x pi sqrt(1-x^2) omega(x) for a Jacobi marginal with alpha, beta >= -1/2.
double degree_zero_envelope(const RecurrenceTable& t) {
    const double p = t.jacobi_params().alpha + 0.5;
    const double q = t.jacobi_params().beta + 0.5;
    const double log_c = jacobi_log_normalization(t.jacobi_params());
    double log_sup = 0.0;
    if (p + q > 0.0) {
        // argmax of (1-x)^p (1+x)^q is x* = (q-p)/(p+q).
        if (p > 0.0) log_sup += p * std::log(2.0 * p / (p + q));
        if (q > 0.0) log_sup += q * std::log(2.0 * q / (p + q));
    }
    return std::exp(std::log(std::numbers::pi) - log_c + log_sup);
}

std::size_t scan_points(std::size_t degree) { return 2048 + 32 * degree; }

double scan_bound(const CDKernel& kernel) {
    const std::size_t d = kernel.dim();
    if (d == 1) {
        // Scan the full ratio K_N(x,x) omega(x) / omega_eq(x) directly.
        const std::size_t g = scan_points(kernel.max_degree(0));
        std::vector<double> fx(kernel.size());
        double sup = 0.0;
        for (std::size_t i = 0; i <= g; ++i) {
            const double x = std::cos(std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(g));
            const double r = arcsine_ratio(kernel.table(0), x);
            if (!std::isfinite(r)) {
                throw DomainError("rejection_bound: omega/omega_eq is unbounded for " +
                                  kernel.measure().id());
            }
            double kxx = 0.0;
            const double pt[1] = {x};
            kernel.features(pt, fx);
            for (double v : fx) kxx += v * v;
            sup = std::max(sup, kxx * r);
        }
        return sup;
    }
    // Per-dimension sups of phi_k(x)^2 omega_j / omega_eq, combined per multi-index.
    std::vector<std::vector<double>> sups(d);
    for (std::size_t j = 0; j < d; ++j) {
        const std::size_t deg = kernel.max_degree(j);
        const std::size_t g = scan_points(deg);
        sups[j].assign(deg + 1, 0.0);
        std::vector<double> phi(deg + 1);
        for (std::size_t i = 0; i <= g; ++i) {
            const double x = std::cos(std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(g));
            const double r = arcsine_ratio(kernel.table(j), x);
            if (!std::isfinite(r)) {
                throw DomainError("rejection_bound: omega/omega_eq is unbounded for " +
                                  kernel.measure().id());
            }
            eval_phi_all(kernel.table(j), x, phi);
            for (std::size_t k = 0; k <= deg; ++k) {
                sups[j][k] = std::max(sups[j][k], phi[k] * phi[k] * r);
            }
        }
    }
    double total = 0.0;
    for (const auto& idx : kernel.indices()) {
        double term = 1.0;
        for (std::size_t j = 0; j < d; ++j) term *= sups[j][idx[j]];
        total += term;
    }
    return total;
}

}  // namespace

void SamplerConfig::validate() const {
    if (!(safety_factor >= 1.0)) throw ConfigError("sampler: safety_factor must be >= 1");
    if (max_rejection_iterations < 1) {
        throw ConfigError("sampler: max_rejection_iterations must be >= 1");
    }
}

// ---------------------------------------------------------------------------
// ChainState

ChainState::ChainState(const CDKernel& kernel) : kernel_(&kernel) {}

void ChainState::evaluate_from_features(Evaluation& ev) const {
    const std::size_t m = points_.size();
    ev.solved.resize(m);
    double proj = 0.0;
    std::size_t row = 0;
    for (std::size_t r = 0; r < m; ++r) {
        // k_r = <phi(x_r), phi(x)> = K_N(x_r, x)
        const auto& fr = features_[r];
        double k = 0.0;
        for (std::size_t t = 0; t < fr.size(); ++t) k += fr[t] * ev.features[t];
        // forward substitution with row r of L
        for (std::size_t c = 0; c < r; ++c) k -= chol_[row + c] * ev.solved[c];
        k /= chol_[row + r];
        ev.solved[r] = k;
        proj += k * k;
        row += r + 1;
    }
    double v = ev.kxx - proj;
    if (v < 0.0) {
        if (v < -kClampTolerance * std::max(1.0, ev.kxx)) {
            throw NumericalError("conditional density is negative beyond round-off (" +
                                 std::to_string(v) + "); Gram matrix is ill-conditioned");
        }
        v = 0.0;
    }
    ev.value = v;
}

void ChainState::evaluate(std::span<const double> x, Evaluation& ev) const {
    ev.features.resize(kernel_->size());
    kernel_->features(x, ev.features);
    ev.kxx = 0.0;
    for (double f : ev.features) ev.kxx += f * f;
    evaluate_from_features(ev);
}

double ChainState::conditional(std::span<const double> x) const {
    Evaluation ev;
    evaluate(x, ev);
    return ev.value;
}

void ChainState::commit(std::span<const double> x, const Evaluation& ev) {
    if (points_.size() >= kernel_->size()) {
        throw NumericalError("chain already holds N points");
    }
    const double pivot_sq = ev.value;
    if (!(pivot_sq > kClampTolerance * std::max(1.0, ev.kxx))) {
        throw NumericalError("Cholesky update failed: point " + format_point(x) +
                             " is (nearly) in the span of accepted points");
    }
    chol_.insert(chol_.end(), ev.solved.begin(), ev.solved.end());
    chol_.push_back(std::sqrt(pivot_sq));
    points_.emplace_back(x.begin(), x.end());
    features_.push_back(ev.features);
}

void ChainState::accept(std::span<const double> x) {
    Evaluation ev;
    evaluate(x, ev);
    commit(x, ev);
}

// ---------------------------------------------------------------------------

Point sample_equilibrium_point(RngStream& rng, std::size_t d) {
    Point x(d);
    for (auto& v : x) v = std::cos(std::numbers::pi * rng.uniform_open());
    return x;
}

double arcsine_ratio(const RecurrenceTable& table, double x) {
    if (x < -1.0 || x > 1.0) return 0.0;
    if (table.kind() == FamilyKind::chebyshev_t) return 1.0;
    if (table.kind() == FamilyKind::custom) {
        if (x == -1.0 || x == 1.0) return std::numeric_limits<double>::quiet_NaN();
        return table.density(x) * std::numbers::pi * std::sqrt((1.0 - x) * (1.0 + x));
    }
    const double p = table.jacobi_params().alpha + 0.5;
    const double q = table.jacobi_params().beta + 0.5;
    double log_r = std::log(std::numbers::pi) - jacobi_log_normalization(table.jacobi_params());
    if (p != 0.0) log_r += p * std::log1p(-x);
    if (q != 0.0) log_r += q * std::log1p(x);
    return std::exp(log_r);
}

double rejection_bound(const CDKernel& kernel, const SamplerConfig& config) {
    config.validate();
    const auto& marginals = kernel.measure().marginals();
    for (const auto& m : marginals) {
        if (m.kind() != FamilyKind::custom &&
            (m.jacobi_params().alpha < -0.5 || m.jacobi_params().beta < -0.5)) {
            throw DomainError("rejection_bound: arcsine proposal cannot dominate " +
                              kernel.measure().id() + " (alpha or beta < -1/2)");
        }
    }
    if (config.rejection_bound_strategy == BoundStrategy::analytic) {
        if (std::all_of(marginals.begin(), marginals.end(), jacobi_within_half)) {
            // pi sqrt(1-x^2) omega_j(x) phi_k(x)^2 <= 2 for k >= 1 when |alpha|, |beta| <= 1/2.
            std::vector<double> c0(kernel.dim());
            for (std::size_t j = 0; j < kernel.dim(); ++j) {
                c0[j] = degree_zero_envelope(kernel.table(j));
            }
            double total = 0.0;
            for (const auto& idx : kernel.indices()) {
                double term = 1.0;
                for (std::size_t j = 0; j < kernel.dim(); ++j) term *= idx[j] == 0 ? c0[j] : 2.0;
                total += term;
            }
            return total;
        }
        std::cerr << "dppmc: warning: analytic rejection bound needs |alpha|, |beta| <= 1/2; "
                     "falling back to empirical scan for "
                  << kernel.measure().id() << '\n';
    }
    return config.safety_factor * scan_bound(kernel);
}

WeightedSample sample(const CDKernel& kernel, const SamplerConfig& config) {
    const double bound = rejection_bound(kernel, config);
    RngStream rng(config.rng_seed);
    return sample(kernel, bound, config, rng);
}

WeightedSample sample(const CDKernel& kernel, double bound, const SamplerConfig& config,
                      RngStream& rng) {
    config.validate();
    if (!(bound > 0.0) || !std::isfinite(bound)) {
        throw DomainError("sample: rejection bound must be positive and finite");
    }
    const std::size_t n = kernel.size();
    const std::size_t d = kernel.dim();
    const auto& measure = kernel.measure();

    WeightedSample out;
    out.dim = d;
    out.bound = bound;
    out.proposals.reserve(n);

    ChainState state(kernel);
    ChainState::Evaluation ev;
    ev.features.resize(n);
    Point x(d);
    std::vector<double> diag;
    diag.reserve(n);

    for (std::size_t step = 0; step < n; ++step) {
        std::uint64_t tries = 0;
        while (true) {
            if (tries == config.max_rejection_iterations) {
                throw BoundTooTight("sampler step " + std::to_string(step + 1) + " exceeded " +
                                    std::to_string(config.max_rejection_iterations) +
                                    " proposals; raise safety_factor or the iteration cap");
            }
            ++tries;
            double ratio = 1.0;  // omega(x) / omega_eq(x)
            bool at_edge = false;
            for (std::size_t j = 0; j < d; ++j) {
                x[j] = std::cos(std::numbers::pi * rng.uniform_open());
                if (x[j] <= -1.0 || x[j] >= 1.0) at_edge = true;
            }
            const double u = rng.uniform();
            if (at_edge) continue;
            for (std::size_t j = 0; j < d; ++j) ratio *= arcsine_ratio(measure.marginal(j), x[j]);

            kernel.features(x, ev.features);
            ev.kxx = 0.0;
            for (double f : ev.features) ev.kxx += f * f;
            const double envelope = ev.kxx * ratio / bound;
            if (envelope > 1.0 + kBoundSlack) {
                std::ostringstream msg;
                msg << "rejection bound violated at x = " << format_point(x)
                    << ": K_N(x,x) omega/omega_eq = " << ev.kxx * ratio << " > B = " << bound;
                throw BoundViolation(msg.str());
            }
            // The conditional never exceeds K_N(x,x), so this pre-test is exact.
            if (u >= envelope) continue;
            state.evaluate_from_features(ev);
            if (u < ev.value * ratio / bound) break;
        }
        state.commit(x, ev);
        diag.push_back(ev.kxx);
        out.proposals.push_back(tries);
    }

    out.points = state.points();
    out.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.weights[i] = 1.0 / diag[i];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = i + 1; l < n; ++l) {
            if (out.points[i] == out.points[l]) {
                throw NumericalError("sampler produced duplicate points");
            }
        }
    }
    return out;
}

}  // namespace dppmc
