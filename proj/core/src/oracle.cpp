#include "dppmc/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dppmc/error.hpp"
#include "dppmc/quadrature.hpp"

namespace dppmc {

namespace {

using Sparse = std::vector<std::pair<std::size_t, double>>;

// Monomial coefficients of the normalised T_k, entry p is the coefficient of x^p.
std::vector<double> chebyshev_to_monomial_1d(std::size_t k) {
    std::vector<double> prev{1.0};
    if (k == 0) return prev;
    std::vector<double> cur{0.0, 1.0};
    for (std::size_t i = 1; i < k; ++i) {
        std::vector<double> next(cur.size() + 1, 0.0);
        for (std::size_t p = 0; p < cur.size(); ++p) next[p + 1] += 2.0 * cur[p];
        for (std::size_t p = 0; p < prev.size(); ++p) next[p] -= prev[p];
        prev = std::move(cur);
        cur = std::move(next);
    }
    for (double& c : cur) c *= std::numbers::sqrt2;
    return cur;
}

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

// Chebyshev coefficients of x^p: x^p = 2^{-p} sum_j C(p, j) cos((p - 2j) theta).
std::vector<double> monomial_to_chebyshev_1d(std::size_t p) {
    std::vector<double> c(p + 1, 0.0);
    const double scale = std::ldexp(1.0, -static_cast<int>(p));
    for (std::size_t k = p % 2; k <= p; k += 2) {
        const double b = binomial(p, (p - k) / 2);
        c[k] = k == 0 ? scale * b : 2.0 * scale * b / std::numbers::sqrt2;
    }
    return c;
}

using Converter = std::vector<double> (*)(std::size_t);

PolynomialStatistic::Terms convert(const PolynomialStatistic::Terms& terms, std::size_t d,
                                   Converter conv) {
    PolynomialStatistic::Terms out;
    for (const auto& [idx, coef] : terms) {
        std::vector<std::vector<double>> per_dim(d);
        for (std::size_t j = 0; j < d; ++j) per_dim[j] = conv(idx[j]);
        MultiIndex target(d);
        // odometer over the tensor product of per-dimension expansions
        std::vector<std::size_t> pos(d, 0);
        while (true) {
            double c = coef;
            for (std::size_t j = 0; j < d; ++j) {
                c *= per_dim[j][pos[j]];
                target[j] = static_cast<MultiIndex::value_type>(pos[j]);
            }
            if (c != 0.0) out[target] += c;
            std::size_t j = d;
            bool done = true;
            while (j > 0) {
                --j;
                if (++pos[j] < per_dim[j].size()) {
                    done = false;
                    break;
                }
                pos[j] = 0;
            }
            if (done) break;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second == 0.0 ? out.erase(it) : std::next(it);
    }
    return out;
}

double chebyshev_1d(std::size_t k, double x) {
    if (k == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (std::size_t i = 1; i < k; ++i) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return std::numbers::sqrt2 * cur;
}

// <T_k T_n, T_m> for the normalised Chebyshev family, as a sparse vector over m.
Sparse chebyshev_product(std::size_t k, std::size_t n) {
    if (k == 0) return {{n, 1.0}};
    if (n == 0) return {{k, 1.0}};
    constexpr double r = 1.0 / std::numbers::sqrt2;
    if (n == k) return {{0, 1.0}, {2 * k, r}};
    return {{n > k ? n - k : k - n, r}, {n + k, r}};
}

Sparse dense_to_sparse(const std::vector<double>& v) {
    Sparse s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] != 0.0) s.emplace_back(i, v[i]);
    }
    return s;
}

class Expander {
public:
    Expander(const CDKernel& kernel, std::size_t extra_degree, bool chebyshev_fast)
        : fast_(chebyshev_fast) {
        for (std::size_t j = 0; j < kernel.dim(); ++j) {
            tables_.push_back(
                extend_recurrence(kernel.table(j), kernel.max_degree(j) + extra_degree + 1));
        }
    }

    // Coefficients of (x^power or T_power) * phi_n in dimension j, over phi_m.
    const Sparse& get(std::size_t j, std::size_t power, std::size_t n) {
        auto key = std::make_tuple(j, power, n);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Sparse s = fast_ ? chebyshev_product(power, n)
                         : dense_to_sparse(x_power_expansion(tables_[j], power, n));
        return cache_.emplace(key, std::move(s)).first->second;
    }

private:
    bool fast_;
    std::vector<RecurrenceTable> tables_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Sparse> cache_;
};

std::map<MultiIndex, double> expand(const PolynomialStatistic& p, const MultiIndex& n,
                                    Expander& ex) {
    const std::size_t d = n.dim();
    std::map<MultiIndex, double> out;
    std::vector<const Sparse*> parts(d);
    std::vector<std::size_t> pos(d);
    MultiIndex m(d);
    for (const auto& [idx, coef] : p.terms()) {
        bool empty = false;
        for (std::size_t j = 0; j < d; ++j) {
            parts[j] = &ex.get(j, idx[j], n[j]);
            empty = empty || parts[j]->empty();
        }
        if (empty) continue;
        std::fill(pos.begin(), pos.end(), 0);
        while (true) {
            double c = coef;
            for (std::size_t j = 0; j < d; ++j) {
                const auto& [mj, v] = (*parts[j])[pos[j]];
                m[j] = static_cast<MultiIndex::value_type>(mj);
                c *= v;
            }
            out[m] += c;
            std::size_t j = d;
            bool done = true;
            while (j > 0) {
                --j;
                if (++pos[j] < parts[j]->size()) {
                    done = false;
                    break;
                }
                pos[j] = 0;
            }
            if (done) break;
        }
    }
    return out;
}

}  // namespace

PolynomialStatistic::PolynomialStatistic(std::size_t d, PolyBasis basis, Terms terms)
    : d_(d), basis_(basis), terms_(std::move(terms)) {
    if (d_ == 0) throw DomainError("PolynomialStatistic: dimension must be >= 1");
    for (const auto& [idx, coef] : terms_) {
        if (idx.dim() != d_) throw DomainError("PolynomialStatistic: term dimension mismatch");
        if (!std::isfinite(coef)) throw DomainError("PolynomialStatistic: non-finite coefficient");
    }
}

std::size_t PolynomialStatistic::degree(std::size_t j) const {
    std::size_t deg = 0;
    for (const auto& [idx, coef] : terms_) deg = std::max<std::size_t>(deg, idx[j]);
    return deg;
}

PolynomialStatistic PolynomialStatistic::to_monomial() const {
    if (basis_ == PolyBasis::monomial) return *this;
    return monomial(d_, convert(terms_, d_, &chebyshev_to_monomial_1d));
}

PolynomialStatistic PolynomialStatistic::to_chebyshev() const {
    if (basis_ == PolyBasis::chebyshev) return *this;
    return chebyshev(d_, convert(terms_, d_, &monomial_to_chebyshev_1d));
}

double PolynomialStatistic::operator()(std::span<const double> x) const {
    double total = 0.0;
    for (const auto& [idx, coef] : terms_) {
        double v = coef;
        for (std::size_t j = 0; j < d_; ++j) {
            v *= basis_ == PolyBasis::monomial ? std::pow(x[j], static_cast<double>(idx[j]))
                                               : chebyshev_1d(idx[j], x[j]);
        }
        total += v;
    }
    return total;
}

void PolynomialStatistic::gradient(std::span<const double> x, std::span<double> out) const {
    const PolynomialStatistic mono = to_monomial();
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& [idx, coef] : mono.terms()) {
        for (std::size_t a = 0; a < d_; ++a) {
            if (idx[a] == 0) continue;
            double v = coef * static_cast<double>(idx[a]);
            for (std::size_t j = 0; j < d_; ++j) {
                const double e = static_cast<double>(idx[j]) - (j == a ? 1.0 : 0.0);
                v *= std::pow(x[j], e);
            }
            out[a] += v;
        }
    }
}

Integrand PolynomialStatistic::integrand() const {
    return Integrand{[self = *this](std::span<const double> x) { return self(x); }, 0.0};
}

double cov_exact(const PolynomialStatistic& p, const PolynomialStatistic& q,
                 const CDKernel& kernel) {
    if (p.dim() != kernel.dim() || q.dim() != kernel.dim()) {
        throw DomainError("cov_exact: polynomial and kernel dimensions differ");
    }
    const bool fast = kernel.measure().is_equilibrium() && p.basis() == PolyBasis::chebyshev &&
                      q.basis() == PolyBasis::chebyshev;
    const PolynomialStatistic pp = fast ? p : p.to_monomial();
    const PolynomialStatistic qq = fast ? q : q.to_monomial();
    std::size_t extra = 0;
    for (std::size_t j = 0; j < kernel.dim(); ++j) {
        extra = std::max({extra, pp.degree(j), qq.degree(j)});
    }
    Expander ex(kernel, extra, fast);
    const std::set<MultiIndex> inside(kernel.indices().begin(), kernel.indices().end());

    double total = 0.0;
    for (const auto& n : kernel.indices()) {
        const auto ap = expand(pp, n, ex);
        const auto aq = expand(qq, n, ex);
        for (const auto& [m, a] : ap) {
            if (inside.count(m)) continue;
            auto it = aq.find(m);
            if (it != aq.end()) total += a * it->second;
        }
    }
    return total;
}

double var_double_integral(const Integrand& f, const CDKernel& kernel, std::size_t order) {
    const std::size_t d = kernel.dim();
    if (d > 2) {
        throw DomainError("var_double_integral: unsupported dimension " + std::to_string(d) +
                          " (d <= 2)");
    }
    if (order == 0) throw DomainError("var_double_integral: order must be >= 1");
    std::vector<QuadratureRule> rules;
    for (std::size_t j = 0; j < d; ++j) {
        rules.push_back(gauss_rule(extend_recurrence(kernel.table(j), order), order));
    }
    std::size_t count = 1;
    for (const auto& r : rules) count *= r.nodes.size();

    const auto n = static_cast<Eigen::Index>(kernel.size());
    Eigen::MatrixXd phi(static_cast<Eigen::Index>(count), n);
    Eigen::VectorXd w(static_cast<Eigen::Index>(count));
    Eigen::VectorXd fv(static_cast<Eigen::Index>(count));
    std::vector<double> x(d);
    std::vector<double> feat(kernel.size());
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t rem = i;
        double wi = 1.0;
        for (std::size_t j = d; j-- > 0;) {
            const std::size_t k = rem % order;
            rem /= order;
            x[j] = rules[j].nodes[k];
            wi *= rules[j].weights[k];
        }
        kernel.features(x, feat);
        for (Eigen::Index c = 0; c < n; ++c) phi(static_cast<Eigen::Index>(i), c) = feat[c];
        w[static_cast<Eigen::Index>(i)] = wi;
        fv[static_cast<Eigen::Index>(i)] = f(x);
    }
    const Eigen::MatrixXd gram = phi * phi.transpose();
    double total = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        for (Eigen::Index l = 0; l < gram.cols(); ++l) {
            const double diff = fv[i] - fv[l];
            total += w[i] * w[l] * diff * diff * gram(i, l) * gram(i, l);
        }
    }
    return 0.5 * total;
}

double cov_limit_cheby(const MultiIndex& k, const MultiIndex& l) {
    if (k.dim() != l.dim()) throw DomainError("cov_limit_cheby: dimension mismatch");
    if (!(k == l)) return 0.0;
    return 0.5 * static_cast<double>(k.total_degree());
}

}  // namespace dppmc
