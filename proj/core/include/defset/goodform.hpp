#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "defset/matrix.hpp"

namespace defset {

/// A South-East walk, encoded by thresholds f(0..m) with f(0) = 0 and
/// f weakly increasing. Cell (i, j) (1-based) lies below the walk iff j <= f(i).
class Walk {
public:
    Walk() = default;
    /// `thresholds` holds f(1..m); throws Errc::domain if not weakly increasing or > cols.
    Walk(std::vector<std::size_t> thresholds, std::size_t cols);

    std::size_t rows() const noexcept { return f_.empty() ? 0 : f_.size() - 1; }
    /// f(i) for 0 <= i <= rows().
    std::size_t f(std::size_t i) const noexcept { return f_[i]; }
    /// f(1..m).
    std::span<const std::size_t> thresholds() const noexcept { return std::span(f_).subspan(1); }
    /// Zero-based row/column: is the cell below (left of) the walk?
    bool below(std::size_t row, std::size_t col) const noexcept { return col < f_[row + 1]; }

    friend bool operator==(const Walk&, const Walk&) = default;

private:
    std::vector<std::size_t> f_{0};
};

/// Row and column arrangement plus a walk valid for the arranged matrix.
/// row_perm[r] is the original (0-based) row placed at position r.
struct GoodFormWitness {
    std::vector<std::size_t> row_perm;
    std::vector<std::size_t> col_perm;
    Walk walk;

    friend bool operator==(const GoodFormWitness&, const GoodFormWitness&) = default;
};

/// Every revealed 1 in a row is strictly left of every revealed 0, and every
/// revealed 0 in a column is strictly above every revealed 1.
bool is_good_form(const PartialMatrix& p);

/// Ones (or empties) on or left of f(i), zeros (or empties) to the right, in every row.
bool walk_is_valid(const PartialMatrix& p, const Walk& w);

/// Canonical walk f(i) = max(f(i-1), rightmost revealed 1 of row i). This is
/// the pointwise smallest candidate, so it is returned exactly when some
/// valid walk exists.
std::optional<Walk> witness_walk(const PartialMatrix& p);

/// Edge a -> b iff some row reveals a 1 in column a and a 0 in column b.
class ColumnPrecedenceDigraph {
public:
    explicit ColumnPrecedenceDigraph(const PartialMatrix& p);

    std::size_t size() const noexcept { return n_; }
    bool has_edge(std::size_t a, std::size_t b) const noexcept {
        return (succ_[a * stride_ + b / word_bits] >> (b % word_bits)) & 1u;
    }
    /// Kahn's algorithm taking the smallest available index first; nullopt on a cycle.
    std::optional<std::vector<std::size_t>> topological_order() const;

private:
    std::size_t n_;
    std::size_t stride_;
    std::vector<Word> succ_;
};

enum class PermuteMethod { digraph, bruteforce };

inline constexpr std::uint64_t default_bruteforce_cap = 100'000'000;

/// Finds row/column permutations putting `p` in good form, with a valid walk.
/// The brute-force method tries all m!·n! arrangements and throws
/// Errc::cap_exceeded when that product exceeds `bruteforce_cap`.
std::optional<GoodFormWitness> permutable_to_good_form(const PartialMatrix& p,
                                                       PermuteMethod method = PermuteMethod::digraph,
                                                       std::uint64_t bruteforce_cap = default_bruteforce_cap);

/// Checks a witness against `p`: bijective permutations and a walk valid for the arrangement.
bool verify_witness(const PartialMatrix& p, const GoodFormWitness& w);

} // namespace defset
