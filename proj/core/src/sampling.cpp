#include "defset/sampling.hpp"

#include <cmath>

#include "defset/error.hpp"

namespace defset {

BigInt uniform_below(SplitMix64& rng, const BigInt& bound) {
    if (bound <= 0) throw Error(Errc::domain, "uniform_below needs a positive bound");
    if (bound <= std::numeric_limits<std::uint64_t>::max()) {
        return BigInt(rng.below(bound.convert_to<std::uint64_t>()));
    }
    const std::size_t bits = boost::multiprecision::msb(bound) + 1;
    while (true) {
        BigInt x = 0;
        for (std::size_t have = 0; have < bits; have += 64) x = (x << 64) | BigInt(rng());
        x &= (BigInt(1) << bits) - 1;
        if (x < bound) return x;
    }
}

BinaryMatrix sample_uniform_exact(MarginClass& cls, SplitMix64& rng) {
    const BigInt& size = cls.size();
    if (size == 0) throw Error(Errc::empty_class, "margins admit no matrix");
    return cls.unrank(uniform_below(rng, size));
}

BinaryMatrix sample_uniform_exact(const MarginSpec& margins, std::uint64_t seed, std::uint64_t class_cap) {
    MarginClass cls(margins);
    if (cls.size() == 0) throw Error(Errc::empty_class, "margins admit no matrix");
    if (cls.size() > class_cap) throw Error(Errc::cap_exceeded, "class too large for exact sampling");
    SplitMix64 rng(seed);
    return sample_uniform_exact(cls, rng);
}

ChainConfig ChainConfig::defaults(std::size_t m, std::size_t n, std::uint64_t seed) {
    const auto cells = static_cast<std::uint64_t>(m * n);
    const auto log_cells = static_cast<std::uint64_t>(std::ceil(std::log(static_cast<double>(cells))));
    return {20 * cells * log_cells, cells, seed};
}

bool try_switch(BinaryMatrix& m, std::size_t i, std::size_t i2, std::size_t j, std::size_t j2) noexcept {
    const bool a = m.get(i, j);
    const bool b = m.get(i, j2);
    const bool c = m.get(i2, j);
    const bool d = m.get(i2, j2);
    if (a != d || b != c || a == b) return false;
    m.flip(i, j);
    m.flip(i, j2);
    m.flip(i2, j);
    m.flip(i2, j2);
    return true;
}

SwitchChain::SwitchChain(BinaryMatrix start, std::uint64_t seed) : state_(std::move(start)), rng_(seed) {}

bool SwitchChain::step() {
    ++steps_;
    const std::size_t m = state_.rows();
    const std::size_t n = state_.cols();
    if (m < 2 || n < 2) return false;
    std::size_t i = rng_.below(m);
    std::size_t i2 = rng_.below(m - 1);
    if (i2 >= i) ++i2;
    std::size_t j = rng_.below(n);
    std::size_t j2 = rng_.below(n - 1);
    if (j2 >= j) ++j2;
    if (i > i2) std::swap(i, i2);
    if (j > j2) std::swap(j, j2);
    const bool applied = try_switch(state_, i, i2, j, j2);
    switches_ += applied;
    return applied;
}

void SwitchChain::advance(std::uint64_t steps) {
    for (std::uint64_t k = 0; k < steps; ++k) step();
}

BinaryMatrix switch_chain_sample(const BinaryMatrix& start, const ChainConfig& config) {
    if (config.thin == 0) throw Error(Errc::domain, "thin must be at least 1");
    SwitchChain chain(start, config.seed);
    chain.advance(config.burnin + config.thin);
    return chain.state();
}

std::vector<BinaryMatrix> switch_chain_samples(const BinaryMatrix& start, const ChainConfig& config,
                                               std::size_t count) {
    if (config.thin == 0) throw Error(Errc::domain, "thin must be at least 1");
    SwitchChain chain(start, config.seed);
    chain.advance(config.burnin);
    std::vector<BinaryMatrix> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        chain.advance(config.thin);
        out.push_back(chain.state());
    }
    return out;
}

BinaryMatrix sample_bernoulli_bipartite(std::size_t m, std::size_t n, Rational lambda, std::uint64_t seed) {
    if (lambda.den <= 0 || lambda.num < 0 || lambda.num > lambda.den) {
        throw Error(Errc::domain, "lambda must lie in [0, 1]");
    }
    SplitMix64 rng(seed);
    BinaryMatrix out(m, n);
    const auto den = static_cast<std::uint64_t>(lambda.den);
    const auto num = static_cast<std::uint64_t>(lambda.num);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out.set(i, j, rng.below(den) < num);
    return out;
}

BinaryMatrix circulant_regular(std::size_t n, std::size_t k) {
    if (k > n) throw Error(Errc::out_of_range, "row sum exceeds dimension");
    BinaryMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.set(i, j, (j + n - i) % n < k);
    return out;
}

} // namespace defset
