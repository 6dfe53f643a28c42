#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "defset/counting.hpp"
#include "defset/error.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace defset {
namespace {

TEST(CountExact, Examples) {
    EXPECT_EQ(count_exact(regular_margins(3, 1)), 6);
    EXPECT_EQ(count_exact(MarginSpec{{1, 1}, {1, 1}}), 2);
    EXPECT_EQ(count_exact(regular_margins(4, 2)), 90);
    EXPECT_EQ(oracle::class_members(regular_margins(4, 2)).size(), 90u);
}

TEST(CountExact, PermutationMatrices) {
    BigInt f = 1;
    for (std::size_t n = 1; n <= 12; ++n) {
        f *= n;
        EXPECT_EQ(count_exact(regular_margins(n, 1)), f);
    }
}

TEST(CountExact, InfeasibleIsZero) {
    EXPECT_EQ(count_exact(MarginSpec{{2, 0}, {2, 0}}), 0);
    EXPECT_THROW(count_exact(MarginSpec{{2, 2}, {2, 1}}), Error);
}

TEST(CountExact, Invariances) {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const auto mat = testing::random_matrix(2 + rng.below(5), 2 + rng.below(5), rng);
        const auto mg = margins_of(mat);
        const auto c = count_exact(mg);
        EXPECT_EQ(count_exact(mg.transposed()), c);
        EXPECT_EQ(count_exact(mg.complemented()), c);
        auto shuffled = mg;
        std::shuffle(shuffled.s.begin(), shuffled.s.end(), rng);
        std::shuffle(shuffled.t.begin(), shuffled.t.end(), rng);
        EXPECT_EQ(count_exact(shuffled), c);
    }
}

TEST(Enumerate, DistinctMembersWithRequestedMargins) {
    for (const auto& mg : {regular_margins(4, 2), MarginSpec{{2, 1, 1}, {1, 2, 1}}, regular_margins(5, 2)}) {
        const auto all = enumerate_class(mg, 100000);
        EXPECT_EQ(BigInt(all.size()), count_exact(mg));
        const std::set<BinaryMatrix> distinct(all.begin(), all.end());
        EXPECT_EQ(distinct.size(), all.size());
        for (const auto& m : all) EXPECT_EQ(margins_of(m), mg);
    }
}

TEST(Enumerate, CapExceeded) {
    try {
        enumerate_class(regular_margins(4, 2), 89);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::cap_exceeded);
    }
}

TEST(Enumerate, UnrankFollowsEnumerationOrder) {
    MarginClass cls(MarginSpec{{2, 1, 2}, {1, 2, 1, 1}});
    std::size_t index = 0;
    cls.enumerate([&](const BinaryMatrix& m) {
        EXPECT_EQ(cls.unrank(index), m);
        ++index;
        return true;
    });
    EXPECT_EQ(BigInt(index), cls.size());
    EXPECT_THROW(cls.unrank(cls.size()), Error);
}

TEST(Enumerate, VisitorCanStop) {
    std::size_t seen = 0;
    MarginClass(regular_margins(4, 2)).enumerate([&](const BinaryMatrix&) { return ++seen < 5; });
    EXPECT_EQ(seen, 5u);
}

TEST(Estimate, Examples) {
    const auto e1 = estimate_count_leading(regular_margins(2, 1));
    EXPECT_NEAR(std::exp(e1.log_value), 16.0 / 6.0, 1e-10 * 16.0 / 6.0);
    EXPECT_NEAR(e1.log_value, 0.9808292530117262, 1e-12);
    const auto e3 = estimate_count_leading(regular_margins(3, 1));
    EXPECT_NEAR(std::exp(e3.log_value), 729.0 / 84.0, 1e-10 * 729.0 / 84.0);
    EXPECT_NEAR(6.0 / std::exp(e3.log_value), 0.691, 5e-4);
    EXPECT_NEAR(e3.log_value, e3.log_inverse_global + e3.log_row_product + e3.log_col_product, 1e-12);
}

TEST(Estimate, Degenerate) {
    const auto e = estimate_count_leading(MarginSpec{{3, 3, 3}, {3, 3, 3}});
    EXPECT_TRUE(e.degenerate);
    EXPECT_EQ(e.log_value, 0.0);
    EXPECT_TRUE(estimate_count_leading(MarginSpec{{0, 0}, {0, 0, 0}}).degenerate);
}

TEST(Estimate, SymmetricUnderTransposeAndComplement) {
    const MarginSpec mg{{3, 1, 2}, {2, 2, 1, 1}};
    const double v = estimate_count_leading(mg).log_value;
    EXPECT_NEAR(estimate_count_leading(mg.transposed()).log_value, v, 1e-12);
    EXPECT_NEAR(estimate_count_leading(mg.complemented()).log_value, v, 1e-12);
}

TEST(Estimate, RatioOnRegularFamilyIsBounded) {
    for (std::int64_t k = 1; k <= 4; ++k) {
        const auto mg = regular_margins(static_cast<std::size_t>(2 * k), k);
        const double ratio = std::exp(std::log(count_exact(mg).convert_to<double>()) -
                                      estimate_count_leading(mg).log_value);
        EXPECT_GT(ratio, 0.0);
        EXPECT_LE(ratio, 1.05);
    }
}

TEST(LogBinomial, MatchesSmallValues) {
    EXPECT_NEAR(log_binomial(4, 2), std::log(6.0), 1e-12);
    EXPECT_NEAR(log_binomial(9, 3), std::log(84.0), 1e-12);
    EXPECT_EQ(log_binomial(5, 0), 0.0);
}

} // namespace
} // namespace defset
