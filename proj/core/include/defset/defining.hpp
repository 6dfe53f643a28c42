#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "defset/goodform.hpp"
#include "defset/margins.hpp"
#include "defset/matrix.hpp"

namespace defset {

/// Zeros/ones of M above (alpha) and below (beta) a walk.
struct WalkSplitCounts {
    std::size_t alpha0 = 0;
    std::size_t alpha1 = 0;
    std::size_t beta0 = 0;
    std::size_t beta1 = 0;

    /// Size of the smallest defining set compatible with this walk.
    std::size_t defining_cost() const noexcept { return alpha1 + beta0; }
};

/// Split counts of M arranged by the witness permutations against its walk.
WalkSplitCounts split_counts(const BinaryMatrix& m, const GoodFormWitness& w);

/// The cells that must be revealed for `w` to certify M \ D in good form:
/// ones above the walk and zeros below it, in original coordinates.
PartialMatrix defining_set_from_witness(const BinaryMatrix& m, const GoodFormWitness& w);

/// Number of completions of `p` in A(margins), stopping once `cap` is reached.
/// Throws Errc::inconsistent_partial if p already breaks a margin.
std::uint64_t count_completions(const PartialMatrix& p, const MarginSpec& margins, std::uint64_t cap);

enum class DefiningMethod { goodform, oracle };

bool is_defining(const PartialMatrix& d, const BinaryMatrix& m, DefiningMethod method = DefiningMethod::goodform);

struct ColumnOrderCost {
    std::size_t cost = 0;
    GoodFormWitness witness;
};

/// Cheapest defining set whose good-form arrangement uses `col_order`.
/// Each row independently takes its best threshold (largest on ties); rows
/// are then stably sorted by threshold.
ColumnOrderCost min_cost_for_column_order(const BinaryMatrix& m, std::span<const std::size_t> col_order);

struct SdsResult {
    std::size_t value = 0;
    PartialMatrix witness_d{1, 1};
    GoodFormWitness witness;
    bool exact = true;
};

inline constexpr std::uint64_t default_factorial_cap = 3'628'800; // 10!

/// Smallest defining set by branch and bound over column orders of the
/// smaller side. Throws Errc::cap_exceeded if min(m!, n!) > cap.
SdsResult sds_exact(const BinaryMatrix& m, std::uint64_t cap_factorial = default_factorial_cap);

/// Local search over column orders (adjacent transpositions, steepest descent,
/// random restarts). Result is an upper bound, flagged exact = false.
SdsResult sds_heuristic(const BinaryMatrix& m, std::size_t restarts = 50, std::uint64_t seed = 0);

/// sds_exact when within the cap, otherwise sds_heuristic.
SdsResult sds_best_effort(const BinaryMatrix& m, std::uint64_t cap_factorial = default_factorial_cap,
                          std::uint64_t seed = 0);

/// min(#ones, #zeros): the all-ones or all-zeros defining set.
std::size_t trivial_defining_bound(const BinaryMatrix& m);

using CellIndex = std::pair<std::size_t, std::size_t>;

/// Greedily drops cells (in `order`, row-major when empty) whose removal keeps
/// D defining. One pass suffices since defining sets are closed upwards.
PartialMatrix minimalize_to_critical(const PartialMatrix& d, const BinaryMatrix& m,
                                     std::span<const CellIndex> order = {});

bool is_critical(const PartialMatrix& d, const BinaryMatrix& m);

/// Max sds over A(margins). Throws Errc::empty_class or Errc::cap_exceeded.
std::size_t maxsds_exact(const MarginSpec& margins, std::uint64_t class_cap = 100'000);

} // namespace defset
