#include "dppmc/variance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dppmc/error.hpp"
#include "dppmc/quadrature.hpp"

namespace dppmc {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

// Values of g on the tensor grid of angle nodes, first coordinate slowest.
std::vector<double> grid_values(const std::function<double(std::span<const double>)>& g,
                                const QuadratureRule& rule, std::size_t d) {
    const std::size_t n = rule.nodes.size();
    std::vector<double> cosines(n);
    for (std::size_t i = 0; i < n; ++i) cosines[i] = std::cos(rule.nodes[i]);
    std::vector<double> values(ipow(n, d));
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
        for (std::size_t j = 0; j < d; ++j) x[j] = cosines[idx[j]];
        values[flat] = g(x);
        for (std::size_t j = d; j-- > 0;) {
            if (++idx[j] < n) break;
            idx[j] = 0;
        }
    }
    return values;
}

// Contract axis `axis` of a tensor of shape dims (row-major) with matrix m (rows x dims[axis]).
std::vector<double> mode_product(const std::vector<double>& t, std::vector<std::size_t>& dims,
                                 std::size_t axis, const std::vector<double>& m,
                                 std::size_t rows) {
    std::size_t outer = 1;
    for (std::size_t j = 0; j < axis; ++j) outer *= dims[j];
    std::size_t inner = 1;
    for (std::size_t j = axis + 1; j < dims.size(); ++j) inner *= dims[j];
    const std::size_t cols = dims[axis];
    std::vector<double> out(outer * rows * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t r = 0; r < rows; ++r) {
            double* dst = &out[(o * rows + r) * inner];
            for (std::size_t c = 0; c < cols; ++c) {
                const double w = m[r * cols + c];
                if (w == 0.0) continue;
                const double* src = &t[(o * cols + c) * inner];
                for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
            }
        }
    }
    dims[axis] = rows;
    return out;
}

ChebCoeffs transform(std::vector<double> values, const QuadratureRule& rule, std::size_t d,
                     std::size_t cutoff) {
    const std::size_t n = rule.nodes.size();
    // m[k][i] = w_i T_k(cos theta_i)
    std::vector<double> m((cutoff + 1) * n);
    for (std::size_t k = 0; k <= cutoff; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double tk = k == 0 ? 1.0
                                     : std::numbers::sqrt2 *
                                           std::cos(static_cast<double>(k) * rule.nodes[i]);
            m[k * n + i] = rule.weights[i] * tk;
        }
    }
    std::vector<std::size_t> dims(d, n);
    for (std::size_t axis = 0; axis < d; ++axis) {
        values = mode_product(values, dims, axis, m, cutoff + 1);
    }
    return ChebCoeffs(d, cutoff, std::move(values));
}

std::size_t default_nodes(std::size_t cutoff, std::size_t nodes) {
    return nodes != 0 ? nodes : std::max<std::size_t>(4 * cutoff, 32);
}

}  // namespace

ChebCoeffs::ChebCoeffs(std::size_t d, std::size_t cutoff, std::vector<double> values)
    : d_(d), cutoff_(cutoff), values_(std::move(values)) {
    if (d_ == 0) throw DomainError("ChebCoeffs: dimension must be >= 1");
    if (values_.size() != ipow(cutoff_ + 1, d_)) {
        throw DomainError("ChebCoeffs: expected (cutoff+1)^d values");
    }
}

double ChebCoeffs::at(const MultiIndex& k) const {
    if (k.dim() != d_) throw DomainError("ChebCoeffs::at: dimension mismatch");
    std::size_t flat = 0;
    for (std::size_t j = 0; j < d_; ++j) {
        if (k[j] > cutoff_) return 0.0;
        flat = flat * (cutoff_ + 1) + k[j];
    }
    return values_[flat];
}

MultiIndex ChebCoeffs::index(std::size_t flat) const {
    MultiIndex k(d_);
    for (std::size_t j = d_; j-- > 0;) {
        k[j] = static_cast<MultiIndex::value_type>(flat % (cutoff_ + 1));
        flat /= cutoff_ + 1;
    }
    return k;
}

ChebCoeffs cheb_coeffs(const std::function<double(std::span<const double>)>& f, std::size_t d,
                       std::size_t cutoff, std::size_t nodes) {
    if (d == 0) throw DomainError("cheb_coeffs: dimension must be >= 1");
    if (cutoff < 1) throw DomainError("cheb_coeffs: cutoff must be >= 1");
    const auto rule = gauss_chebyshev_theta(default_nodes(cutoff, nodes));
    return transform(grid_values(f, rule, d), rule, d, cutoff);
}

SeriesValue sigma_f_sq(const ChebCoeffs& coeffs) {
    SeriesValue out;
    double shell = 0.0;
    for (std::size_t flat = 0; flat < coeffs.count(); ++flat) {
        const MultiIndex k = coeffs.index(flat);
        const double c2 = coeffs[flat] * coeffs[flat];
        out.value += 0.5 * static_cast<double>(k.total_degree()) * c2;
        if (k.sup_norm() == coeffs.cutoff()) shell += c2;
    }
    out.tail_bound = static_cast<double>(coeffs.cutoff() * coeffs.dim()) * shell;
    return out;
}

SeriesValue omega_f_omega_sq(const Integrand& f, const Density& omega, std::size_t d,
                             std::size_t cutoff, std::size_t nodes) {
    auto g = [&](std::span<const double> x) {
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        double ratio = omega(x);
        for (double xj : x) ratio *= std::numbers::pi * std::sqrt((1.0 - xj) * (1.0 + xj));
        const double v = fx * ratio;
        if (!std::isfinite(v)) {
            throw NumericalError("omega_f_omega_sq: f omega / omega_eq is not finite on the grid");
        }
        return v;
    };
    return sigma_f_sq(cheb_coeffs(g, d, cutoff, nodes));
}

double dirichlet_bound(const std::function<double(std::span<const double>)>& f,
                       const Gradient& gradient, std::size_t d, std::size_t order) {
    if (d == 0 || order == 0) throw DomainError("dirichlet_bound: d and order must be >= 1");
    constexpr double h = 1e-5;
    std::vector<double> grad(d);
    std::vector<double> probe(d);
    auto energy = [&](std::span<const double> x) {
        if (gradient) {
            gradient(x, grad);
        } else {
            std::copy(x.begin(), x.end(), probe.begin());
            for (std::size_t a = 0; a < d; ++a) {
                const double lo = std::max(-1.0, x[a] - h);
                const double hi = std::min(1.0, x[a] + h);
                probe[a] = hi;
                const double fh = f(probe);
                probe[a] = lo;
                const double fl = f(probe);
                probe[a] = x[a];
                grad[a] = (fh - fl) / (hi - lo);
            }
        }
        double e = 0.0;
        for (std::size_t a = 0; a < d; ++a) e += (1.0 - x[a] * x[a]) * grad[a] * grad[a];
        return e;
    };
    const auto rule = gauss_chebyshev_theta(order);
    const auto values = grid_values(energy, rule, d);
    double total = 0.0;
    const double w = std::pow(1.0 / static_cast<double>(order), static_cast<double>(d));
    for (double v : values) total += v;
    return 0.5 * w * total;
}

}  // namespace dppmc
