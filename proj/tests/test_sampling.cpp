#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <array>
#include <map>

#include "defset/error.hpp"
#include "defset/sampling.hpp"
#include "helpers.hpp"

namespace defset {
namespace {

double chi_square_p(const std::map<BinaryMatrix, std::uint64_t>& freq, std::size_t states, std::uint64_t draws) {
    const double expected = static_cast<double>(draws) / static_cast<double>(states);
    double stat = 0.0;
    for (const auto& [m, c] : freq) stat += (c - expected) * (c - expected) / expected;
    stat += static_cast<double>(states - freq.size()) * expected;
    const boost::math::chi_squared dist(static_cast<double>(states - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

TEST(Switch, IdentityGoesToAntiDiagonal) {
    auto m = BinaryMatrix::identity(2);
    EXPECT_TRUE(try_switch(m, 0, 1, 0, 1));
    EXPECT_EQ(m, BinaryMatrix::from_rows({{0, 1}, {1, 0}}));
    EXPECT_TRUE(try_switch(m, 0, 1, 0, 1));
    EXPECT_EQ(m, BinaryMatrix::identity(2));
    auto z = BinaryMatrix::from_rows({{1, 1}, {0, 1}});
    EXPECT_FALSE(try_switch(z, 0, 1, 0, 1));
}

TEST(Switch, AllOnesNeverMoves) {
    const auto start = BinaryMatrix::ones(4, 5);
    SwitchChain chain(start, 3);
    chain.advance(10000);
    EXPECT_EQ(chain.state(), start);
    EXPECT_EQ(chain.switches(), 0u);
    EXPECT_EQ(chain.steps(), 10000u);
}

TEST(Switch, TwoByTwoChainOnlyAlternates) {
    SwitchChain chain(BinaryMatrix::identity(2), 1);
    for (int i = 0; i < 100; ++i) {
        chain.step();
        const auto& s = chain.state();
        EXPECT_TRUE(s == BinaryMatrix::identity(2) || s == BinaryMatrix::from_rows({{0, 1}, {1, 0}}));
    }
}

TEST(Switch, PreservesMarginsEveryStep) {
    SplitMix64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto start = testing::random_matrix(2 + rng.below(8), 2 + rng.below(8), rng);
        const auto mg = margins_of(start);
        SwitchChain chain(start, trial);
        for (int i = 0; i < 2000; ++i) {
            chain.step();
            ASSERT_EQ(margins_of(chain.state()), mg);
        }
    }
}

TEST(Switch, Deterministic) {
    const auto start = circulant_regular(8, 4);
    const ChainConfig cfg = ChainConfig::defaults(8, 8, 99);
    EXPECT_EQ(switch_chain_sample(start, cfg), switch_chain_sample(start, cfg));
    EXPECT_EQ(switch_chain_samples(start, cfg, 5), switch_chain_samples(start, cfg, 5));
    EXPECT_NE(switch_chain_sample(start, cfg), switch_chain_sample(start, ChainConfig::defaults(8, 8, 100)));
}

TEST(Switch, Defaults) {
    const auto cfg = ChainConfig::defaults(4, 4, 0);
    EXPECT_EQ(cfg.thin, 16u);
    EXPECT_EQ(cfg.burnin, 20u * 16u * 3u);
}

TEST(Switch, ChainIsUniformOnPermutationMatrices) {
    const ChainConfig cfg{200, 9, 5};
    const auto samples = switch_chain_samples(circulant_regular(3, 1), cfg, 60000);
    std::map<BinaryMatrix, std::uint64_t> freq;
    for (const auto& s : samples) ++freq[s];
    EXPECT_EQ(freq.size(), 6u);
    EXPECT_GT(chi_square_p(freq, 6, samples.size()), 0.01);
}

TEST(ExactSampler, CoversSupportAndIsUniform) {
    for (const auto& [mg, states] : {std::pair{MarginSpec{{1, 1}, {1, 1}}, std::size_t{2}},
                                     std::pair{regular_margins(3, 1), std::size_t{6}}}) {
        MarginClass cls(mg);
        SplitMix64 rng(123);
        std::map<BinaryMatrix, std::uint64_t> freq;
        const std::uint64_t draws = 100000;
        for (std::uint64_t i = 0; i < draws; ++i) ++freq[sample_uniform_exact(cls, rng)];
        EXPECT_EQ(freq.size(), states);
        EXPECT_GT(chi_square_p(freq, states, draws), 0.01);
    }
}

TEST(ExactSampler, SeededAndEdgeCases) {
    const auto mg = regular_margins(6, 3);
    EXPECT_EQ(sample_uniform_exact(mg, 4), sample_uniform_exact(mg, 4));
    EXPECT_EQ(margins_of(sample_uniform_exact(mg, 4)), mg);
    for (std::uint64_t seed = 0; seed < 5; ++seed)
        EXPECT_EQ(sample_uniform_exact(MarginSpec{{3, 3}, {2, 2, 2}}, seed), BinaryMatrix::ones(2, 3));
    try {
        sample_uniform_exact(MarginSpec{{2, 0}, {2, 0}}, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::empty_class);
    }
    try {
        sample_uniform_exact(mg, 1, 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::cap_exceeded);
    }
}

TEST(ExactSampler, UniformBelowStaysInRange) {
    SplitMix64 rng(1);
    const BigInt bound = BigInt(1) << 100;
    for (int i = 0; i < 1000; ++i) {
        const auto v = uniform_below(rng, bound + 3);
        EXPECT_GE(v, 0);
        EXPECT_LT(v, bound + 3);
    }
}

TEST(Bernoulli, Extremes) {
    EXPECT_EQ(sample_bernoulli_bipartite(5, 7, Rational{0, 1}, 3), BinaryMatrix(5, 7));
    EXPECT_EQ(sample_bernoulli_bipartite(5, 7, Rational{1, 1}, 3), BinaryMatrix::ones(5, 7));
}

TEST(Bernoulli, TotalsConcentrate) {
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto m = sample_bernoulli_bipartite(32, 32, Rational{1, 2}, seed);
        const double dev = std::abs(static_cast<double>(m.count_ones()) - 512.0);
        if (dev <= 4.0 * std::sqrt(1024.0 * 0.25)) ++inside;
    }
    EXPECT_GE(inside, 950);
}

TEST(Circulant, IsRegular) {
    for (std::size_t n = 1; n <= 9; ++n)
        for (std::size_t k = 0; k <= n; ++k)
            EXPECT_EQ(margins_of(circulant_regular(n, k)), regular_margins(n, static_cast<std::int64_t>(k)));
}

TEST(Rng, BelowIsUnbiasedOnSmallRange) {
    SplitMix64 rng(8);
    std::array<int, 3> hits{};
    for (int i = 0; i < 30000; ++i) ++hits[rng.below(3)];
    for (int h : hits) EXPECT_NEAR(h, 10000, 500);
    EXPECT_EQ(SplitMix64::algorithm, "splitmix64");
}

} // namespace
} // namespace defset
