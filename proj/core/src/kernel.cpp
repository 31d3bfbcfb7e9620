#include "dppmc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dppmc/error.hpp"

namespace dppmc {

ProductMeasure::ProductMeasure(std::vector<RecurrenceTable> marginals)
    : marginals_(std::move(marginals)) {
    if (marginals_.empty()) throw DomainError("ProductMeasure: dimension must be >= 1");
    for (const auto& m : marginals_) {
        if (!m.has_density()) throw DomainError("ProductMeasure: every marginal needs a density");
    }
}

ProductMeasure ProductMeasure::equilibrium(std::size_t d) {
    return ProductMeasure(std::vector<RecurrenceTable>(d, chebyshev_recurrence(1)));
}

ProductMeasure ProductMeasure::jacobi(const std::vector<JacobiParams>& params) {
    std::vector<RecurrenceTable> tables;
    tables.reserve(params.size());
    for (const auto& p : params) {
        if (p.alpha == -0.5 && p.beta == -0.5) {
            tables.push_back(chebyshev_recurrence(1));
        } else if (p.alpha == 0.0 && p.beta == 0.0) {
            tables.push_back(legendre_recurrence(1));
        } else {
            tables.push_back(jacobi_recurrence(p, 1));
        }
    }
    return ProductMeasure(std::move(tables));
}

double ProductMeasure::density(std::span<const double> x) const {
    double w = 1.0;
    for (std::size_t j = 0; j < marginals_.size(); ++j) w *= marginals_[j].density(x[j]);
    return w;
}

bool ProductMeasure::is_equilibrium() const noexcept {
    return std::all_of(marginals_.begin(), marginals_.end(),
                       [](const auto& m) { return m.kind() == FamilyKind::chebyshev_t; });
}

std::string ProductMeasure::id() const {
    std::ostringstream os;
    os << "jacobi(";
    for (std::size_t j = 0; j < marginals_.size(); ++j) {
        if (j) os << ';';
        if (marginals_[j].kind() == FamilyKind::custom) {
            os << "custom";
        } else {
            os << marginals_[j].jacobi_params().alpha << ',' << marginals_[j].jacobi_params().beta;
        }
    }
    os << ')';
    return os.str();
}

CDKernel::CDKernel(ProductMeasure measure, std::size_t n)
    : measure_(std::move(measure)), n_(n), max_degree_(measure_.dim(), 0) {
    if (n_ == 0) throw DomainError("CDKernel: N must be >= 1");
    indices_ = MultiIndexBasis(measure_.dim()).prefix(n_);
    for (const auto& k : indices_) {
        for (std::size_t j = 0; j < k.dim(); ++j) {
            max_degree_[j] = std::max<std::size_t>(max_degree_[j], k[j]);
        }
    }
    tables_.reserve(measure_.dim());
    for (std::size_t j = 0; j < measure_.dim(); ++j) {
        tables_.push_back(extend_recurrence(measure_.marginal(j), max_degree_[j] + 1));
    }
}

void CDKernel::check_point(std::span<const double> x) const {
    if (x.size() != dim()) {
        throw DomainError("CDKernel: point has dimension " + std::to_string(x.size()) +
                          ", kernel has " + std::to_string(dim()));
    }
}

void CDKernel::features(std::span<const double> x, std::span<double> out) const {
    check_point(x);
    if (out.size() != n_) throw DomainError("CDKernel::features: output must have N entries");
    const std::size_t d = dim();
    // Per-dimension phi values, laid out back to back.
    std::vector<std::size_t> offset(d + 1, 0);
    for (std::size_t j = 0; j < d; ++j) offset[j + 1] = offset[j] + max_degree_[j] + 1;
    std::vector<double> uni(offset[d]);
    for (std::size_t j = 0; j < d; ++j) {
        eval_phi_all(tables_[j], x[j],
                     std::span<double>(uni).subspan(offset[j], max_degree_[j] + 1));
    }
    for (std::size_t k = 0; k < n_; ++k) {
        const auto& idx = indices_[k];
        double v = uni[offset[0] + idx[0]];
        for (std::size_t j = 1; j < d; ++j) v *= uni[offset[j] + idx[j]];
        out[k] = v;
    }
}

std::vector<double> CDKernel::features(std::span<const double> x) const {
    std::vector<double> out(n_);
    features(x, out);
    return out;
}

double CDKernel::phi(std::size_t k, std::span<const double> x) const {
    check_point(x);
    if (k >= n_) {
        // Outside the kernel's own prefix: evaluate from the basis directly.
        const MultiIndex idx = MultiIndexBasis(dim()).at(k);
        double v = 1.0;
        for (std::size_t j = 0; j < dim(); ++j) {
            v *= eval_phi(extend_recurrence(tables_[j], idx[j] + 1), idx[j], x[j]);
        }
        return v;
    }
    double v = 1.0;
    for (std::size_t j = 0; j < dim(); ++j) v *= eval_phi(tables_[j], indices_[k][j], x[j]);
    return v;
}

double CDKernel::operator()(std::span<const double> x, std::span<const double> y) const {
    const auto fx = features(x);
    const auto fy = features(y);
    double s = 0.0;
    for (std::size_t k = 0; k < n_; ++k) s += fx[k] * fy[k];
    return s;
}

double CDKernel::diag(std::span<const double> x) const {
    const auto fx = features(x);
    double s = 0.0;
    for (double v : fx) s += v * v;
    return s;
}

double CDKernel::leverage(std::span<const double> x) const {
    const double k = diag(x);
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw NumericalError("leverage: K_N(x, x) is not positive at the given point");
    }
    return 1.0 / k;
}

double CDKernel::univariate(std::size_t j, std::size_t m, double s, double t) const {
    if (m == 0) return 0.0;
    const RecurrenceTable table = extend_recurrence(tables_.at(j), m);
    const auto ps = eval_phi_all(table, s, m);
    const auto pt = eval_phi_all(table, t, m);
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += ps[k] * pt[k];
    return sum;
}

ProductIdentity product_identity_check(const CDKernel& kernel, std::size_t side,
                                       std::span<const double> x, std::span<const double> y) {
    std::size_t count = 1;
    for (std::size_t j = 0; j < kernel.dim(); ++j) count *= side;
    if (side == 0 || count != kernel.size()) {
        throw DomainError("product_identity_check: kernel size " + std::to_string(kernel.size()) +
                          " is not " + std::to_string(side) + "^" + std::to_string(kernel.dim()));
    }
    ProductIdentity out;
    out.lhs = kernel(x, y);
    out.rhs = 1.0;
    for (std::size_t j = 0; j < kernel.dim(); ++j) out.rhs *= kernel.univariate(j, side, x[j], y[j]);
    return out;
}

}  // namespace dppmc
