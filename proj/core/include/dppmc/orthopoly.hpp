#pragma once

// Univariate orthonormal polynomials on [-1, 1] described by their
// three-term recurrence
//
//     x phi_k(x) = a_k phi_{k+1}(x) + b_k phi_k(x) + a_{k-1} phi_{k-1}(x),  a_{-1} = 0.
//
// Every reference measure handled here is a probability measure, so phi_0 == 1.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace dppmc {

struct JacobiParams {
    double alpha = 0.0;
    double beta = 0.0;

    // Throws DomainError unless alpha > -1 and beta > -1.
    void validate() const;

    friend bool operator==(const JacobiParams&, const JacobiParams&) = default;
};

enum class FamilyKind { jacobi, chebyshev_t, legendre, custom };

// Immutable table of recurrence coefficients a_0..a_{n-1}, b_0..b_{n-1}.
// Degrees 0..size()-1 can be evaluated from it.
class RecurrenceTable {
public:
    using Density = std::function<double(double)>;

    RecurrenceTable(std::vector<double> a, std::vector<double> b, FamilyKind kind,
                    JacobiParams params = {}, Density density = {});

    [[nodiscard]] std::size_t size() const noexcept { return a_.size(); }
    [[nodiscard]] double a(std::size_t k) const { return a_.at(k); }
    [[nodiscard]] double b(std::size_t k) const { return b_.at(k); }
    [[nodiscard]] std::span<const double> a_coeffs() const noexcept { return a_; }
    [[nodiscard]] std::span<const double> b_coeffs() const noexcept { return b_; }
    [[nodiscard]] FamilyKind kind() const noexcept { return kind_; }

    // Meaningful for jacobi, chebyshev_t (-1/2, -1/2) and legendre (0, 0).
    [[nodiscard]] const JacobiParams& jacobi_params() const noexcept { return params_; }

    // Density of the (probability) reference measure w.r.t. Lebesgue measure on (-1, 1).
    // Throws DomainError for custom tables built without a density.
    [[nodiscard]] double density(double x) const;
    [[nodiscard]] bool has_density() const noexcept;

private:
    std::vector<double> a_;
    std::vector<double> b_;
    FamilyKind kind_;
    JacobiParams params_;
    Density density_;
    double log_norm_ = 0.0;  // log of the Jacobi normalising constant
};

// Coefficients for the probability-normalised Jacobi measure
// (1-x)^alpha (1+x)^beta / c_{alpha,beta} on [-1, 1]; n_max >= 1 entries.
[[nodiscard]] RecurrenceTable jacobi_recurrence(JacobiParams params, std::size_t n_max);
[[nodiscard]] RecurrenceTable chebyshev_recurrence(std::size_t n_max);
[[nodiscard]] RecurrenceTable legendre_recurrence(std::size_t n_max);

// Same family as `table`, with at least n_max entries. Custom tables cannot grow.
[[nodiscard]] RecurrenceTable extend_recurrence(const RecurrenceTable& table, std::size_t n_max);

// log c_{alpha,beta} = log( 2^{alpha+beta+1} Gamma(alpha+1) Gamma(beta+1) / Gamma(alpha+beta+2) ).
[[nodiscard]] double jacobi_log_normalization(JacobiParams params);

// Fills out[0..out.size()) with phi_0(x)..phi_{out.size()-1}(x) by forward recurrence.
void eval_phi_all(const RecurrenceTable& table, double x, std::span<double> out);
[[nodiscard]] std::vector<double> eval_phi_all(const RecurrenceTable& table, double x, std::size_t count);
[[nodiscard]] double eval_phi(const RecurrenceTable& table, std::size_t k, double x);

struct NevaiDeviation {
    double a_dev = 0.0;  // sup_{k >= k_min} |a_k - 1/2|
    double b_dev = 0.0;  // sup_{k >= k_min} |b_k|
};
[[nodiscard]] NevaiDeviation nevai_diagnostic(const RecurrenceTable& table, std::size_t k_min);

// <x^m phi_k, phi_l> in L^2(mu), obtained by applying the recurrence m times to phi_k.
// Requires max(k, l) + m < table.size().
[[nodiscard]] double inner_product_x_power(const RecurrenceTable& table, std::size_t m,
                                           std::size_t k, std::size_t l);

// Expansion coefficients of x^m phi_k on phi_0..phi_{k+m}; entry j is <x^m phi_k, phi_j>.
[[nodiscard]] std::vector<double> x_power_expansion(const RecurrenceTable& table, std::size_t m,
                                                    std::size_t k);

// Arcsine density 1/(pi sqrt(1-x^2)) on (-1, 1); +inf at the endpoints.
[[nodiscard]] double equilibrium_density(double x) noexcept;

}  // namespace dppmc
