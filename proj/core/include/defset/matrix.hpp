#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace defset {

using Word = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }

/// Dense m x n 0/1 matrix. Rows are bit-packed into 64-bit words; bits past
/// column n-1 in the last word of each row are always zero.
class BinaryMatrix {
public:
    BinaryMatrix(std::size_t rows, std::size_t cols);

    /// Builds from nested 0/1 literals, e.g. {{1,0},{0,1}}.
    static BinaryMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
    static BinaryMatrix ones(std::size_t rows, std::size_t cols);
    static BinaryMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return m_; }
    std::size_t cols() const noexcept { return n_; }
    std::size_t cells() const noexcept { return m_ * n_; }
    std::size_t words_per_row() const noexcept { return stride_; }

    bool get(std::size_t i, std::size_t j) const noexcept {
        return (words_[i * stride_ + j / word_bits] >> (j % word_bits)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool value) noexcept {
        Word& w = words_[i * stride_ + j / word_bits];
        const Word bit = Word{1} << (j % word_bits);
        w = value ? (w | bit) : (w & ~bit);
    }
    void flip(std::size_t i, std::size_t j) noexcept { words_[i * stride_ + j / word_bits] ^= Word{1} << (j % word_bits); }

    std::span<const Word> row(std::size_t i) const noexcept { return {words_.data() + i * stride_, stride_}; }

    std::size_t row_ones(std::size_t i) const noexcept;
    std::size_t col_ones(std::size_t j) const noexcept;
    std::size_t count_ones() const noexcept;

    BinaryMatrix transposed() const;
    /// Result row r is source row row_order[r]; result column c is source column col_order[c].
    BinaryMatrix permuted(std::span<const std::size_t> row_order, std::span<const std::size_t> col_order) const;

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;
    friend auto operator<=>(const BinaryMatrix&, const BinaryMatrix&) = default;

private:
    std::size_t m_;
    std::size_t n_;
    std::size_t stride_;
    std::vector<Word> words_;
};

BinaryMatrix complement(const BinaryMatrix& m);

enum class Cell : std::uint8_t { zero, one, unknown };

/// m x n matrix over {0, 1, *}. `known` marks filled cells; `values` is a
/// subset of `known` holding the ones.
class PartialMatrix {
public:
    /// All cells empty.
    PartialMatrix(std::size_t rows, std::size_t cols);
    /// All cells filled from `full`.
    explicit PartialMatrix(const BinaryMatrix& full);

    std::size_t rows() const noexcept { return m_; }
    std::size_t cols() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return stride_; }

    Cell get(std::size_t i, std::size_t j) const noexcept;
    void set(std::size_t i, std::size_t j, Cell c) noexcept;
    bool is_known(std::size_t i, std::size_t j) const noexcept {
        return (known_[i * stride_ + j / word_bits] >> (j % word_bits)) & 1u;
    }

    std::span<const Word> known_row(std::size_t i) const noexcept { return {known_.data() + i * stride_, stride_}; }
    std::span<const Word> value_row(std::size_t i) const noexcept { return {values_.data() + i * stride_, stride_}; }

    /// Number of filled cells, |D|.
    std::size_t size() const noexcept;
    bool is_complete() const noexcept { return size() == m_ * n_; }

    /// D subset-of M: every filled cell agrees with M.
    bool contained_in(const BinaryMatrix& full) const;

    PartialMatrix transposed() const;
    PartialMatrix permuted(std::span<const std::size_t> row_order, std::span<const std::size_t> col_order) const;

    friend bool operator==(const PartialMatrix&, const PartialMatrix&) = default;

private:
    std::size_t m_;
    std::size_t n_;
    std::size_t stride_;
    std::vector<Word> known_;
    std::vector<Word> values_;
};

/// M \ D: the cells of M that D leaves empty, and empty wherever D is filled.
PartialMatrix difference(const BinaryMatrix& full, const PartialMatrix& d);

enum class Side : std::uint8_t { row, column };

/// Subset of the rows or of the columns of a matrix. May be empty.
class IndexSet {
public:
    IndexSet(Side side, std::size_t universe);
    IndexSet(Side side, std::size_t universe, std::initializer_list<std::size_t> members);
    static IndexSet all(Side side, std::size_t universe);
    /// Low `universe` bits of `mask` (universe <= 64).
    static IndexSet from_mask(Side side, std::size_t universe, std::uint64_t mask);

    Side side() const noexcept { return side_; }
    std::size_t universe() const noexcept { return universe_; }
    bool contains(std::size_t k) const noexcept { return (bits_[k / word_bits] >> (k % word_bits)) & 1u; }
    void insert(std::size_t k);
    void erase(std::size_t k) noexcept { bits_[k / word_bits] &= ~(Word{1} << (k % word_bits)); }
    std::size_t size() const noexcept;
    std::span<const Word> words() const noexcept { return bits_; }
    std::vector<std::size_t> members() const;
    IndexSet complemented() const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    Side side_;
    std::size_t universe_;
    std::vector<Word> bits_;
};

/// e(R, C): exact number of ones of M inside M[R, C].
std::size_t ones_in_subarray(const BinaryMatrix& m, const IndexSet& rows, const IndexSet& cols);

/// True iff `perm` is a permutation of 0..size-1.
bool is_permutation_of(std::span<const std::size_t> perm, std::size_t size);

} // namespace defset
