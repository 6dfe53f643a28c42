#pragma once

#include <cstdint>

#include "defset/matrix.hpp"
#include "defset/rng.hpp"

namespace defset::testing {

inline BinaryMatrix random_matrix(std::size_t m, std::size_t n, SplitMix64& rng) {
    BinaryMatrix out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out.set(i, j, rng() & 1u);
    return out;
}

inline PartialMatrix random_partial(std::size_t m, std::size_t n, SplitMix64& rng) {
    PartialMatrix out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out.set(i, j, static_cast<Cell>(rng.below(3)));
    return out;
}

/// Cells of `m` selected by the row-major bit mask.
inline PartialMatrix reveal(const BinaryMatrix& m, std::uint64_t mask) {
    PartialMatrix d(m.rows(), m.cols());
    for (std::size_t k = 0; k < m.cells(); ++k) {
        if ((mask >> k) & 1u) {
            const std::size_t i = k / m.cols();
            const std::size_t j = k % m.cols();
            d.set(i, j, m.get(i, j) ? Cell::one : Cell::zero);
        }
    }
    return d;
}

} // namespace defset::testing
