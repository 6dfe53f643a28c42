#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "defset/matrix.hpp"

namespace defset {

__extension__ typedef __int128 Int128;
__extension__ typedef unsigned __int128 UInt128;

/// Exact non-negative rational. Not normalized unless `reduced()` is called.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational reduced() const {
        const auto g = std::gcd(num, den);
        return g == 0 ? *this : Rational{num / g, den / g};
    }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return static_cast<Int128>(a.num) * b.den == static_cast<Int128>(b.num) * a.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<Int128>(a.num) * b.den < static_cast<Int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

/// Row sums s (length m) and column sums t (length n). Construction does not
/// validate; `validate()` checks range and equal totals.
struct MarginSpec {
    std::vector<std::int64_t> s;
    std::vector<std::int64_t> t;

    std::size_t m() const noexcept { return s.size(); }
    std::size_t n() const noexcept { return t.size(); }
    /// E = sum of row sums.
    std::int64_t total() const noexcept { return std::accumulate(s.begin(), s.end(), std::int64_t{0}); }
    std::int64_t column_total() const noexcept { return std::accumulate(t.begin(), t.end(), std::int64_t{0}); }
    /// lambda = E / (mn), unreduced.
    Rational density() const noexcept { return {total(), static_cast<std::int64_t>(m() * n())}; }

    /// Throws Errc::out_of_range or Errc::total_mismatch.
    void validate() const;

    MarginSpec transposed() const { return {t, s}; }
    /// Margins of the complement class: (n - s_i), (m - t_j).
    MarginSpec complemented() const;

    friend bool operator==(const MarginSpec&, const MarginSpec&) = default;
};

MarginSpec margins_of(const BinaryMatrix& m);

/// Lambda^k_n: n x n, every row and column sums to k.
MarginSpec regular_margins(std::size_t n, std::int64_t k);

/// Gale-Ryser: A(s,t) is nonempty iff, with s sorted non-increasingly,
/// s_1 + ... + s_k <= sum_j min(t_j, k) for every k. Throws as validate().
bool gale_ryser_feasible(const MarginSpec& margins);

/// Dominance test without validation; callers guarantee equal totals and ranges.
bool gale_ryser_unchecked(std::vector<std::int64_t> rows, const std::vector<std::int64_t>& cols);

} // namespace defset
