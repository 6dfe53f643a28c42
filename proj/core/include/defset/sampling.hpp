#pragma once

#include <cstdint>
#include <vector>

#include "defset/counting.hpp"
#include "defset/margins.hpp"
#include "defset/matrix.hpp"
#include "defset/rng.hpp"

namespace defset {

inline constexpr std::uint64_t default_class_cap = std::uint64_t{1} << 62;

/// Exactly uniform member of A(margins): uniform index, then unrank.
/// Throws Errc::empty_class, or Errc::cap_exceeded when |A| > class_cap.
BinaryMatrix sample_uniform_exact(const MarginSpec& margins, std::uint64_t seed,
                                  std::uint64_t class_cap = default_class_cap);

/// Same, reusing a memoized class and caller-owned generator.
BinaryMatrix sample_uniform_exact(MarginClass& cls, SplitMix64& rng);

/// Uniform BigInt in [0, bound).
BigInt uniform_below(SplitMix64& rng, const BigInt& bound);

struct ChainConfig {
    std::uint64_t burnin = 0;
    std::uint64_t thin = 1;
    std::uint64_t seed = 0;

    /// burnin = 20 mn ceil(ln mn), thin = mn.
    static ChainConfig defaults(std::size_t m, std::size_t n, std::uint64_t seed);
};

/// Lazy switch chain. Each step draws rows i < i' and columns j < j'
/// uniformly and flips the 2x2 submatrix if it is a checkerboard.
class SwitchChain {
public:
    SwitchChain(BinaryMatrix start, std::uint64_t seed);

    /// One step; returns true if a switch was applied.
    bool step();
    void advance(std::uint64_t steps);

    const BinaryMatrix& state() const noexcept { return state_; }
    std::uint64_t steps() const noexcept { return steps_; }
    std::uint64_t switches() const noexcept { return switches_; }

private:
    BinaryMatrix state_;
    SplitMix64 rng_;
    std::uint64_t steps_ = 0;
    std::uint64_t switches_ = 0;
};

/// Applies the switch on rows (i, i2) and columns (j, j2) if active. Returns whether it was.
bool try_switch(BinaryMatrix& m, std::size_t i, std::size_t i2, std::size_t j, std::size_t j2) noexcept;

/// burnin + thin steps from `start`.
BinaryMatrix switch_chain_sample(const BinaryMatrix& start, const ChainConfig& config);

/// burnin steps, then `count` samples spaced `thin` steps apart.
std::vector<BinaryMatrix> switch_chain_samples(const BinaryMatrix& start, const ChainConfig& config,
                                               std::size_t count);

/// Every cell independently 1 with probability lambda (exact rational comparison).
BinaryMatrix sample_bernoulli_bipartite(std::size_t m, std::size_t n, Rational lambda, std::uint64_t seed);

/// A fixed member of Lambda^k_n: cell (i, j) is 1 iff (j - i) mod n < k.
BinaryMatrix circulant_regular(std::size_t n, std::size_t k);

} // namespace defset
