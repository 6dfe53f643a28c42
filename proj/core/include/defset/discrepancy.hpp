#pragma once

#include <cstdint>

#include "defset/margins.hpp"
#include "defset/matrix.hpp"

namespace defset {

/// mn * delta(M[R,C]) = mn * ones(R,C) - E * |R| * |C|, held exactly.
struct DiscrepancyValue {
    std::int64_t scaled = 0;
    std::int64_t denominator = 1; ///< mn

    double value() const noexcept { return static_cast<double>(scaled) / static_cast<double>(denominator); }
    std::int64_t magnitude() const noexcept { return scaled < 0 ? -scaled : scaled; }

    friend bool operator==(const DiscrepancyValue&, const DiscrepancyValue&) = default;
};

/// Throws Errc::side_mismatch unless rows is row-side and cols column-side.
DiscrepancyValue delta_scaled(const BinaryMatrix& m, const IndexSet& rows, const IndexSet& cols);

struct MaxDiscrepancy {
    DiscrepancyValue value; ///< signed discrepancy of the witness pair
    IndexSet rows;
    IndexSet cols;
};

inline constexpr std::size_t max_exact_discrepancy_side = 25;

/// max |delta| over all subset pairs. Enumerates subsets of the smaller side;
/// for a fixed subset the optimal partner takes every positive-surplus (for the
/// maximum) or negative-surplus (for the minimum) index. Ties keep the first
/// pair found. Throws Errc::too_large if min(m, n) > 25.
MaxDiscrepancy max_discrepancy_exact(const BinaryMatrix& m);

/// Best of `trials` random subset pairs (each index kept with probability 1/2);
/// a lower bound on the exact maximum.
MaxDiscrepancy max_discrepancy_sampled(const BinaryMatrix& m, std::uint64_t trials, std::uint64_t seed);

/// c (m n^{1/2+eps} + n m^{1/2+eps}): the uniform deviation allowed for e(A,B)
/// against lambda |A||B| in a random fixed-margin bipartite graph.
double concentration_threshold(std::size_t m, std::size_t n, double c, double eps);

/// Parameters of the walk-block lower bound on defining-set size.
struct CertificateInput {
    std::size_t m = 0;
    std::size_t n = 0;
    Rational lambda;                 ///< E / (mn)
    std::int64_t delta_scaled_bound = 0; ///< mn * Delta, Delta a uniform bound on |delta(M[R,C])|

    /// ceil(m^{3/4}), computed exactly.
    std::size_t block_height() const;
    /// ceil(m^{1/4}), computed exactly.
    std::size_t block_count() const;
};

/// max(0, ceil(lambda mn - (n h + ceil(m^{1/4}) Delta) / lambda)).
///
/// Below a walk, cells outside the blocks M[{ih..m}, {f((i-1)h)+1..f(ih)}]
/// number at most nh and each block deviates by at most Delta, so
/// |beta1 - lambda(beta1 + beta0)| <= X = nh + ceil(m^{1/4}) Delta. Since
/// (1 - lambda)/lambda >= 1 for lambda <= 1/2, beta0 >= beta1 - X/lambda and
/// |D| = alpha1 + beta0 >= lambda mn - X/lambda. Evaluated in integers.
/// Throws Errc::domain unless 0 < lambda <= 1/2.
std::int64_t walk_lower_bound_certificate(const CertificateInput& input);

} // namespace defset
