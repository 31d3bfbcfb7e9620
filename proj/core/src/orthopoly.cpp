#include "dppmc/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "dppmc/error.hpp"

namespace dppmc {

void JacobiParams::validate() const {
    if (!(alpha > -1.0) || !(beta > -1.0)) {
        std::ostringstream msg;
        msg << "Jacobi parameters must satisfy alpha > -1 and beta > -1 (got alpha=" << alpha
            << ", beta=" << beta << ")";
        throw DomainError(msg.str());
    }
}

double jacobi_log_normalization(JacobiParams p) {
    p.validate();
    return (p.alpha + p.beta + 1.0) * std::numbers::ln2 + std::lgamma(p.alpha + 1.0) +
           std::lgamma(p.beta + 1.0) - std::lgamma(p.alpha + p.beta + 2.0);
}

RecurrenceTable::RecurrenceTable(std::vector<double> a, std::vector<double> b, FamilyKind kind,
                                 JacobiParams params, Density density)
    : a_(std::move(a)), b_(std::move(b)), kind_(kind), params_(params),
      density_(std::move(density)) {
    if (a_.size() != b_.size()) {
        throw DomainError("recurrence table: a and b must have the same length");
    }
    if (a_.empty()) {
        throw DomainError("recurrence table: at least one coefficient pair is required");
    }
    for (std::size_t k = 0; k < a_.size(); ++k) {
        if (!(a_[k] > 0.0) || !std::isfinite(a_[k]) || !std::isfinite(b_[k])) {
            throw DomainError("recurrence table: a_" + std::to_string(k) +
                              " must be positive and finite");
        }
    }
    if (kind_ != FamilyKind::custom) {
        params_.validate();
        log_norm_ = jacobi_log_normalization(params_);
    }
}

bool RecurrenceTable::has_density() const noexcept {
    return kind_ != FamilyKind::custom || static_cast<bool>(density_);
}

double RecurrenceTable::density(double x) const {
    switch (kind_) {
    case FamilyKind::chebyshev_t:
        return equilibrium_density(x);
    case FamilyKind::legendre:
        return (x >= -1.0 && x <= 1.0) ? 0.5 : 0.0;
    case FamilyKind::jacobi:
        if (x < -1.0 || x > 1.0) return 0.0;
        return std::exp(params_.alpha * std::log1p(-x) + params_.beta * std::log1p(x) - log_norm_);
    case FamilyKind::custom:
        if (!density_) throw DomainError("custom recurrence table has no density evaluator");
        return density_(x);
    }
    return 0.0;
}

double equilibrium_density(double x) noexcept {
    if (x <= -1.0 || x >= 1.0) {
        return (x == -1.0 || x == 1.0) ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return 1.0 / (std::numbers::pi * std::sqrt((1.0 - x) * (1.0 + x)));
}

RecurrenceTable jacobi_recurrence(JacobiParams p, std::size_t n_max) {
    p.validate();
    if (n_max < 1) throw DomainError("jacobi_recurrence: n_max must be >= 1");
    const double al = p.alpha;
    const double be = p.beta;
    const double s = al + be;
    std::vector<double> a(n_max);
    std::vector<double> b(n_max);

    b[0] = (be - al) / (s + 2.0);
    a[0] = std::sqrt(4.0 * (al + 1.0) * (be + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0)));
    for (std::size_t i = 1; i < n_max; ++i) {
        const double k = static_cast<double>(i);
        const double t = 2.0 * k + s;
        b[i] = (be * be - al * al) / (t * (t + 2.0));
        const double k1 = k + 1.0;
        const double num = 4.0 * k1 * (k1 + al) * (k1 + be) * (k1 + s);
        const double den = (t + 2.0) * (t + 2.0) * (t + 3.0) * (t + 1.0);
        a[i] = std::sqrt(num / den);
    }
    return RecurrenceTable(std::move(a), std::move(b), FamilyKind::jacobi, p);
}

RecurrenceTable chebyshev_recurrence(std::size_t n_max) {
    if (n_max < 1) throw DomainError("chebyshev_recurrence: n_max must be >= 1");
    std::vector<double> a(n_max, 0.5);
    std::vector<double> b(n_max, 0.0);
    a[0] = std::numbers::sqrt2 / 2.0;
    return RecurrenceTable(std::move(a), std::move(b), FamilyKind::chebyshev_t,
                           JacobiParams{-0.5, -0.5});
}

RecurrenceTable legendre_recurrence(std::size_t n_max) {
    if (n_max < 1) throw DomainError("legendre_recurrence: n_max must be >= 1");
    std::vector<double> a(n_max);
    std::vector<double> b(n_max, 0.0);
    for (std::size_t i = 0; i < n_max; ++i) {
        const double k1 = static_cast<double>(i) + 1.0;
        a[i] = k1 / std::sqrt((2.0 * k1 - 1.0) * (2.0 * k1 + 1.0));
    }
    return RecurrenceTable(std::move(a), std::move(b), FamilyKind::legendre, JacobiParams{0.0, 0.0});
}

RecurrenceTable extend_recurrence(const RecurrenceTable& table, std::size_t n_max) {
    if (table.size() >= n_max) return table;
    switch (table.kind()) {
    case FamilyKind::jacobi:
        return jacobi_recurrence(table.jacobi_params(), n_max);
    case FamilyKind::chebyshev_t:
        return chebyshev_recurrence(n_max);
    case FamilyKind::legendre:
        return legendre_recurrence(n_max);
    case FamilyKind::custom:
        break;
    }
    throw RangeError("custom recurrence table has " + std::to_string(table.size()) +
                     " entries, " + std::to_string(n_max) + " required");
}

void eval_phi_all(const RecurrenceTable& table, double x, std::span<double> out) {
    if (out.empty()) return;
    if (out.size() > table.size()) {
        throw RangeError("eval_phi: degree " + std::to_string(out.size() - 1) +
                         " outside table of length " + std::to_string(table.size()));
    }
    const auto a = table.a_coeffs();
    const auto b = table.b_coeffs();
    out[0] = 1.0;
    if (out.size() == 1) return;
    out[1] = (x - b[0]) * out[0] / a[0];
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        out[k + 1] = ((x - b[k]) * out[k] - a[k - 1] * out[k - 1]) / a[k];
    }
}

std::vector<double> eval_phi_all(const RecurrenceTable& table, double x, std::size_t count) {
    std::vector<double> out(count);
    eval_phi_all(table, x, out);
    return out;
}

double eval_phi(const RecurrenceTable& table, std::size_t k, double x) {
    if (k >= table.size()) {
        throw RangeError("eval_phi: degree " + std::to_string(k) + " outside table of length " +
                         std::to_string(table.size()));
    }
    return eval_phi_all(table, x, k + 1).back();
}

NevaiDeviation nevai_diagnostic(const RecurrenceTable& table, std::size_t k_min) {
    NevaiDeviation dev;
    for (std::size_t k = k_min; k < table.size(); ++k) {
        dev.a_dev = std::max(dev.a_dev, std::abs(table.a(k) - 0.5));
        dev.b_dev = std::max(dev.b_dev, std::abs(table.b(k)));
    }
    return dev;
}

std::vector<double> x_power_expansion(const RecurrenceTable& table, std::size_t m,
                                      std::size_t k) {
    if (k + m >= table.size()) {
        throw RangeError("x_power_expansion: degree " + std::to_string(k + m) +
                         " outside table of length " + std::to_string(table.size()));
    }
    const auto a = table.a_coeffs();
    const auto b = table.b_coeffs();
    std::vector<double> cur(k + m + 1, 0.0);
    std::vector<double> next(k + m + 1, 0.0);
    cur[k] = 1.0;
    // Support of cur after `step` multiplications is [k - step, k + step] (clipped at 0).
    for (std::size_t step = 0; step < m; ++step) {
        const std::size_t lo = k > step ? k - step : 0;
        const std::size_t hi = k + step;
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t j = lo; j <= hi; ++j) {
            const double c = cur[j];
            if (c == 0.0) continue;
            next[j + 1] += a[j] * c;
            next[j] += b[j] * c;
            if (j > 0) next[j - 1] += a[j - 1] * c;
        }
        cur.swap(next);
    }
    return cur;
}

double inner_product_x_power(const RecurrenceTable& table, std::size_t m, std::size_t k,
                             std::size_t l) {
    if (std::max(k, l) + m >= table.size()) {
        throw RangeError("inner_product_x_power: degrees up to " +
                         std::to_string(std::max(k, l) + m) + " need a longer table (length " +
                         std::to_string(table.size()) + ")");
    }
    const std::size_t gap = k > l ? k - l : l - k;
    if (gap > m) return 0.0;
    return x_power_expansion(table, m, k)[l];
}

}  // namespace dppmc
