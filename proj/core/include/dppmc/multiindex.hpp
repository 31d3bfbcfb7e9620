#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <mutex>
#include <set>
#include <vector>

namespace dppmc {

// A d-tuple of non-negative integers (a monomial exponent or polynomial degree vector).
class MultiIndex {
public:
    using value_type = std::uint32_t;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t d) : k_(d, 0) {}
    MultiIndex(std::initializer_list<value_type> k) : k_(k) {}
    explicit MultiIndex(std::vector<value_type> k) : k_(std::move(k)) {}

    [[nodiscard]] std::size_t dim() const noexcept { return k_.size(); }
    [[nodiscard]] value_type operator[](std::size_t j) const { return k_[j]; }
    value_type& operator[](std::size_t j) { return k_[j]; }
    [[nodiscard]] const std::vector<value_type>& components() const noexcept { return k_; }

    [[nodiscard]] value_type sup_norm() const noexcept;
    [[nodiscard]] std::size_t total_degree() const noexcept;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    // Plain lexicographic order, for use as a map key only.
    friend bool operator<(const MultiIndex& x, const MultiIndex& y) { return x.k_ < y.k_; }

private:
    std::vector<value_type> k_;
};

// Graded (sup-norm first, then lexicographic) strict order. Throws DomainError on
// dimension mismatch.
[[nodiscard]] bool graded_lex_less(const MultiIndex& k, const MultiIndex& l);

// The increasing bijection N -> N^d for the graded lexicographic order, enumerated lazily
// one sup-norm layer at a time. Growth is mutex-protected, so a shared basis may be
// queried from several threads.
class MultiIndexBasis {
public:
    explicit MultiIndexBasis(std::size_t d);

    [[nodiscard]] std::size_t dim() const noexcept { return d_; }

    // b(n).
    [[nodiscard]] MultiIndex at(std::size_t n) const;
    // Inverse of at(); n such that at(n) == k.
    [[nodiscard]] std::size_t index_of(const MultiIndex& k) const;
    // b(0), ..., b(count-1).
    [[nodiscard]] std::vector<MultiIndex> prefix(std::size_t count) const;
    // {b(0), ..., b(M^d - 1)}; equals the discrete hypercube {0..M-1}^d.
    [[nodiscard]] std::set<MultiIndex> hypercube_prefix(std::size_t side) const;

    // Generates entries so that indices below `count` are cached.
    void reserve(std::size_t count) const;

private:
    void grow_to_locked(std::size_t count) const;
    void add_layer_locked() const;

    std::size_t d_;
    mutable std::mutex mutex_;
    mutable std::vector<MultiIndex> cache_;
    mutable std::map<MultiIndex, std::size_t> rank_;
    mutable std::uint32_t layers_ = 0;  // cache holds exactly the hypercube {0..layers_-1}^d
};

// Free-function spellings of the basis queries.
[[nodiscard]] inline MultiIndex bijection(const MultiIndexBasis& basis, std::size_t n) {
    return basis.at(n);
}
[[nodiscard]] inline std::size_t bijection_inverse(const MultiIndexBasis& basis,
                                                   const MultiIndex& k) {
    return basis.index_of(k);
}

}  // namespace dppmc
