#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "defset/margins.hpp"
#include "defset/matrix.hpp"

namespace defset {

using BigInt = boost::multiprecision::cpp_int;

/// A(s,t) as an ordered set. Members are ordered lexicographically by their
/// text serialization (row 1 first, '0' < '1'). Counts are memoized on
/// (row, sorted residual column sums), so one instance can rank/unrank many
/// times cheaply. Not thread-safe; use one instance per worker.
class MarginClass {
public:
    /// Validates margins (throws as MarginSpec::validate).
    explicit MarginClass(MarginSpec margins);

    const MarginSpec& margins() const noexcept { return margins_; }

    /// |A(s,t)|.
    const BigInt& size();

    /// Member at `index` (0-based) in class order. Throws Errc::out_of_range.
    BinaryMatrix unrank(const BigInt& index);

    /// Backtracking enumeration in class order, pruning any row prefix whose
    /// residual margins fail Gale-Ryser. The visitor returns false to stop.
    void enumerate(const std::function<bool(const BinaryMatrix&)>& visit) const;

private:
    BigInt completions(std::size_t row, const std::vector<std::int64_t>& residual);

    MarginSpec margins_;
    std::map<std::pair<std::size_t, std::vector<std::int64_t>>, BigInt> memo_;
    std::optional<BigInt> size_;
};

/// Exact |A(s,t)|.
BigInt count_exact(const MarginSpec& margins);

/// All members in class order. Throws Errc::cap_exceeded when |A(s,t)| > cap.
std::vector<BinaryMatrix> enumerate_class(const MarginSpec& margins, std::uint64_t cap);

/// Leading term of the dense-range asymptotic formula, in log space:
///   -log C(mn, E) + sum_i log C(n, s_i) + sum_j log C(m, t_j).
/// The unknown multiplicative exp(-O((mn)^{2 eps})) correction is not modelled.
struct CountEstimate {
    double log_value = 0.0;
    double log_inverse_global = 0.0; ///< -log C(mn, E)
    double log_row_product = 0.0;    ///< sum_i log C(n, s_i)
    double log_col_product = 0.0;    ///< sum_j log C(m, t_j)
    /// -(lambda log lambda + (1-lambda) log(1-lambda)) mn, the common entropy
    /// approximation of each of the three factors.
    double entropy_term = 0.0;
    /// E in {0, mn}: single-member class, log_value fixed at 0.
    bool degenerate = false;
};

CountEstimate estimate_count_leading(const MarginSpec& margins);

/// log C(n, k) via lgamma.
double log_binomial(std::int64_t n, std::int64_t k);

} // namespace defset
