#include "dppmc/multiindex.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "dppmc/error.hpp"

namespace dppmc {

MultiIndex::value_type MultiIndex::sup_norm() const noexcept {
    return k_.empty() ? 0 : *std::max_element(k_.begin(), k_.end());
}

std::size_t MultiIndex::total_degree() const noexcept {
    return std::accumulate(k_.begin(), k_.end(), std::size_t{0});
}

bool graded_lex_less(const MultiIndex& k, const MultiIndex& l) {
    if (k.dim() != l.dim()) {
        throw DomainError("graded_lex_less: dimension mismatch (" + std::to_string(k.dim()) +
                          " vs " + std::to_string(l.dim()) + ")");
    }
    const auto sk = k.sup_norm();
    const auto sl = l.sup_norm();
    if (sk != sl) return sk < sl;
    return k.components() < l.components();
}

MultiIndexBasis::MultiIndexBasis(std::size_t d) : d_(d) {
    if (d == 0) throw DomainError("MultiIndexBasis: dimension must be >= 1");
}

void MultiIndexBasis::add_layer_locked() const {
    // Layer C_{M+1} \ C_M: indices with sup norm exactly M, in lexicographic order.
    const std::uint32_t m = layers_;
    std::vector<MultiIndex::value_type> k(d_, 0);
    while (true) {
        if (*std::max_element(k.begin(), k.end()) == m) {
            MultiIndex idx(k);
            rank_.emplace(idx, cache_.size());
            cache_.push_back(std::move(idx));
        }
        // Odometer over {0..m}^d with the last coordinate fastest gives lex order.
        std::size_t j = d_;
        while (j > 0) {
            --j;
            if (k[j] < m) {
                ++k[j];
                break;
            }
            k[j] = 0;
            if (j == 0) {
                ++layers_;
                return;
            }
        }
    }
}

void MultiIndexBasis::grow_to_locked(std::size_t count) const {
    while (cache_.size() < count) add_layer_locked();
}

void MultiIndexBasis::reserve(std::size_t count) const {
    std::lock_guard lock(mutex_);
    grow_to_locked(count);
}

MultiIndex MultiIndexBasis::at(std::size_t n) const {
    std::lock_guard lock(mutex_);
    grow_to_locked(n + 1);
    return cache_[n];
}

std::size_t MultiIndexBasis::index_of(const MultiIndex& k) const {
    if (k.dim() != d_) {
        throw DomainError("MultiIndexBasis::index_of: dimension mismatch");
    }
    std::lock_guard lock(mutex_);
    while (layers_ <= k.sup_norm()) add_layer_locked();
    return rank_.at(k);
}

std::vector<MultiIndex> MultiIndexBasis::prefix(std::size_t count) const {
    std::lock_guard lock(mutex_);
    grow_to_locked(count);
    return {cache_.begin(), cache_.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::set<MultiIndex> MultiIndexBasis::hypercube_prefix(std::size_t side) const {
    if (side == 0) throw DomainError("hypercube_prefix: side must be >= 1");
    std::size_t count = 1;
    for (std::size_t j = 0; j < d_; ++j) count *= side;
    const auto entries = prefix(count);
    return {entries.begin(), entries.end()};
}

}  // namespace dppmc
