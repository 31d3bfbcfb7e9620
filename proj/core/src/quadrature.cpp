#include "dppmc/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "dppmc/error.hpp"

namespace dppmc {

QuadratureRule gauss_rule(const RecurrenceTable& table, std::size_t n) {
    if (n == 0) throw DomainError("gauss_rule: n must be >= 1");
    if (n > table.size()) {
        throw RangeError("gauss_rule: " + std::to_string(n) + " nodes need a table of length >= " +
                         std::to_string(n));
    }
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::VectorXd diag(nn);
    Eigen::VectorXd sub(nn > 1 ? nn - 1 : 0);
    for (Eigen::Index i = 0; i < nn; ++i) diag[i] = table.b(static_cast<std::size_t>(i));
    for (Eigen::Index i = 0; i + 1 < nn; ++i) sub[i] = table.a(static_cast<std::size_t>(i));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("gauss_rule: tridiagonal eigensolver did not converge");
    }
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (Eigen::Index i = 0; i < nn; ++i) {
        rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[static_cast<std::size_t>(i)] = v0 * v0;
    }
    return rule;
}

QuadratureRule gauss_legendre(std::size_t n, double lo, double hi) {
    QuadratureRule rule = gauss_rule(legendre_recurrence(n), n);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        // Legendre probability weights sum to 1; Lebesgue mass of [lo, hi] is 2*half.
        rule.weights[i] *= 2.0 * half;
    }
    return rule;
}

QuadratureRule gauss_chebyshev_theta(std::size_t n) {
    if (n == 0) throw DomainError("gauss_chebyshev_theta: n must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = (2.0 * static_cast<double>(i) + 1.0) * std::numbers::pi /
                        (2.0 * static_cast<double>(n));
    }
    return rule;
}

double tensor_integrate(std::span<const QuadratureRule> rules,
                        const std::function<double(std::span<const double>)>& f) {
    const std::size_t d = rules.size();
    if (d == 0) throw DomainError("tensor_integrate: at least one rule is required");
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> point(d);
    double total = 0.0;
    double comp = 0.0;
    while (true) {
        double w = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            point[j] = rules[j].nodes[idx[j]];
            w *= rules[j].weights[idx[j]];
        }
        // Kahan
        const double y = w * f(point) - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;

        std::size_t j = 0;
        while (j < d && ++idx[j] == rules[j].nodes.size()) {
            idx[j] = 0;
            ++j;
        }
        if (j == d) break;
    }
    return total;
}

}  // namespace dppmc
