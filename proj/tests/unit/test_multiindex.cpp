#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <thread>
#include <vector>

#include "dppmc/error.hpp"
#include "dppmc/multiindex.hpp"

using namespace dppmc;

namespace {

using Raw = std::vector<std::uint32_t>;

// All of {0..side-1}^d sorted by (max, then lexicographic) with std::sort.
std::vector<Raw> enumeration_oracle(std::size_t d, std::uint32_t side) {
    std::vector<Raw> all;
    Raw k(d, 0);
    while (true) {
        all.push_back(k);
        std::size_t j = d;
        while (j > 0 && ++k[j - 1] == side) k[--j] = 0;
        if (j == 0) break;
    }
    std::sort(all.begin(), all.end(), [](const Raw& x, const Raw& y) {
        const auto mx = *std::max_element(x.begin(), x.end());
        const auto my = *std::max_element(y.begin(), y.end());
        if (mx != my) return mx < my;
        return x < y;
    });
    return all;
}

MultiIndex mi(std::initializer_list<std::uint32_t> v) { return MultiIndex(Raw(v)); }

}  // namespace

TEST(GradedLex, Comparisons) {
    EXPECT_TRUE(graded_lex_less(mi({0, 1}), mi({1, 0})));
    EXPECT_TRUE(graded_lex_less(mi({1, 1}), mi({0, 2})));
    EXPECT_FALSE(graded_lex_less(mi({2, 1}), mi({2, 1})));
    EXPECT_FALSE(graded_lex_less(mi({0, 2}), mi({1, 1})));
    EXPECT_THROW((void)graded_lex_less(mi({0, 1}), mi({0, 1, 0})), DomainError);
}

TEST(Bijection, FirstEntries) {
    for (std::size_t d = 1; d <= 4; ++d) {
        EXPECT_EQ(MultiIndexBasis(d).at(0), MultiIndex(d));
    }
    const MultiIndexBasis b2(2);
    const std::vector<MultiIndex> expected = {mi({0, 0}), mi({0, 1}), mi({1, 0}), mi({1, 1}), mi({0, 2}),
                                              mi({1, 2}), mi({2, 0}), mi({2, 1}), mi({2, 2})};
    EXPECT_EQ(b2.prefix(9), expected);
}

TEST(Bijection, MatchesSortedEnumeration) {
    for (std::size_t d = 1; d <= 4; ++d) {
        const std::uint32_t side = d <= 2 ? 9 : 5;
        const auto oracle = enumeration_oracle(d, side);
        const MultiIndexBasis basis(d);
        for (std::size_t n = 0; n < oracle.size(); ++n) {
            ASSERT_EQ(basis.at(n).components(), oracle[n]) << "d=" << d << " n=" << n;
            ASSERT_EQ(basis.index_of(MultiIndex(oracle[n])), n);
        }
    }
}

TEST(Bijection, IncreasingAndInverse) {
    const MultiIndexBasis basis(3);
    for (std::size_t n = 0; n + 1 < 500; ++n) {
        EXPECT_TRUE(graded_lex_less(basis.at(n), basis.at(n + 1)));
        EXPECT_EQ(bijection_inverse(basis, bijection(basis, n)), n);
    }
}

TEST(Hypercube, PrefixIsCube) {
    const MultiIndexBasis b1(1);
    std::set<MultiIndex> c5;
    for (std::uint32_t i = 0; i < 5; ++i) c5.insert(mi({i}));
    EXPECT_EQ(b1.hypercube_prefix(5), c5);

    EXPECT_EQ(MultiIndexBasis(2).hypercube_prefix(2),
              (std::set<MultiIndex>{mi({0, 0}), mi({0, 1}), mi({1, 0}), mi({1, 1})}));

    std::set<MultiIndex> binary;
    for (std::uint32_t a = 0; a < 2; ++a)
        for (std::uint32_t b = 0; b < 2; ++b)
            for (std::uint32_t c = 0; c < 2; ++c) binary.insert(mi({a, b, c}));
    EXPECT_EQ(MultiIndexBasis(3).hypercube_prefix(2), binary);
}

TEST(Hypercube, ConcurrentQueriesAgree) {
    const MultiIndexBasis shared(3);
    std::vector<std::vector<MultiIndex>> seen(4);
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < 4; ++t) {
        workers.emplace_back([&, t] {
            for (std::size_t n = 0; n < 1000; ++n) seen[t].push_back(shared.at((n * 37 + t) % 1000));
        });
    }
    for (auto& w : workers) w.join();
    const MultiIndexBasis fresh(3);
    for (std::size_t t = 0; t < 4; ++t) {
        for (std::size_t n = 0; n < 1000; ++n) EXPECT_EQ(seen[t][n], fresh.at((n * 37 + t) % 1000));
    }
}

TEST(MultiIndexValue, Norms) {
    const auto k = mi({3, 0, 5, 1});
    EXPECT_EQ(k.sup_norm(), 5u);
    EXPECT_EQ(k.total_degree(), 9u);
    EXPECT_THROW((void)MultiIndexBasis(0), DomainError);
}
