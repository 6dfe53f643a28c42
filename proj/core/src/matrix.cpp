#include "defset/matrix.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "defset/error.hpp"

namespace defset {

const char* to_string(Errc code) noexcept {
    switch (code) {
    case Errc::parse: return "parse error";
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::total_mismatch: return "total mismatch";
    case Errc::out_of_range: return "out of range";
    case Errc::side_mismatch: return "side mismatch";
    case Errc::inconsistent_partial: return "inconsistent partial";
    case Errc::invalid_permutation: return "invalid permutation";
    case Errc::cap_exceeded: return "cap exceeded";
    case Errc::not_defining: return "not defining";
    case Errc::empty_class: return "empty class";
    case Errc::domain: return "domain error";
    case Errc::too_large: return "too large";
    }
    return "unknown error";
}

namespace {

void require_dims(std::size_t m, std::size_t n) {
    if (m == 0 || n == 0) {
        throw Error(Errc::dimension_mismatch, "matrix dimensions must be positive");
    }
}

std::size_t popcount(std::span<const Word> words) {
    std::size_t total = 0;
    for (Word w : words) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

} // namespace

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : m_(rows), n_(cols), stride_(words_for(cols)), words_() {
    require_dims(rows, cols);
    words_.assign(m_ * stride_, 0);
}

BinaryMatrix BinaryMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.begin()->size();
    BinaryMatrix out(m, n);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n) throw Error(Errc::dimension_mismatch, "ragged row literal");
        std::size_t j = 0;
        for (int v : row) {
            if (v != 0 && v != 1) throw Error(Errc::parse, "matrix literal entries must be 0 or 1");
            out.set(i, j++, v == 1);
        }
        ++i;
    }
    return out;
}

BinaryMatrix BinaryMatrix::ones(std::size_t rows, std::size_t cols) {
    return complement(BinaryMatrix(rows, cols));
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
    BinaryMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out.set(i, i, true);
    return out;
}

std::size_t BinaryMatrix::row_ones(std::size_t i) const noexcept { return popcount(row(i)); }

std::size_t BinaryMatrix::col_ones(std::size_t j) const noexcept {
    std::size_t total = 0;
    for (std::size_t i = 0; i < m_; ++i) total += get(i, j);
    return total;
}

std::size_t BinaryMatrix::count_ones() const noexcept { return popcount(words_); }

BinaryMatrix BinaryMatrix::transposed() const {
    BinaryMatrix out(n_, m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (get(i, j)) out.set(j, i, true);
    return out;
}

BinaryMatrix BinaryMatrix::permuted(std::span<const std::size_t> row_order,
                                    std::span<const std::size_t> col_order) const {
    if (!is_permutation_of(row_order, m_) || !is_permutation_of(col_order, n_)) {
        throw Error(Errc::invalid_permutation, "row/column order is not a permutation");
    }
    BinaryMatrix out(m_, n_);
    for (std::size_t r = 0; r < m_; ++r)
        for (std::size_t c = 0; c < n_; ++c)
            if (get(row_order[r], col_order[c])) out.set(r, c, true);
    return out;
}

BinaryMatrix complement(const BinaryMatrix& m) {
    BinaryMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out.set(i, j, !m.get(i, j));
    return out;
}

PartialMatrix::PartialMatrix(std::size_t rows, std::size_t cols)
    : m_(rows), n_(cols), stride_(words_for(cols)) {
    require_dims(rows, cols);
    known_.assign(m_ * stride_, 0);
    values_.assign(m_ * stride_, 0);
}

PartialMatrix::PartialMatrix(const BinaryMatrix& full) : PartialMatrix(full.rows(), full.cols()) {
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) set(i, j, full.get(i, j) ? Cell::one : Cell::zero);
    }
}

Cell PartialMatrix::get(std::size_t i, std::size_t j) const noexcept {
    if (!is_known(i, j)) return Cell::unknown;
    return ((values_[i * stride_ + j / word_bits] >> (j % word_bits)) & 1u) ? Cell::one : Cell::zero;
}

void PartialMatrix::set(std::size_t i, std::size_t j, Cell c) noexcept {
    const std::size_t k = i * stride_ + j / word_bits;
    const Word bit = Word{1} << (j % word_bits);
    known_[k] = c == Cell::unknown ? (known_[k] & ~bit) : (known_[k] | bit);
    values_[k] = c == Cell::one ? (values_[k] | bit) : (values_[k] & ~bit);
}

std::size_t PartialMatrix::size() const noexcept { return popcount(known_); }

bool PartialMatrix::contained_in(const BinaryMatrix& full) const {
    if (full.rows() != m_ || full.cols() != n_) {
        throw Error(Errc::dimension_mismatch, "partial and full matrix differ in shape");
    }
    for (std::size_t i = 0; i < m_; ++i) {
        const auto k = known_row(i);
        const auto v = value_row(i);
        const auto f = full.row(i);
        for (std::size_t w = 0; w < stride_; ++w) {
            if (((v[w] ^ f[w]) & k[w]) != 0) return false;
        }
    }
    return true;
}

PartialMatrix PartialMatrix::transposed() const {
    PartialMatrix out(n_, m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out.set(j, i, get(i, j));
    return out;
}

PartialMatrix PartialMatrix::permuted(std::span<const std::size_t> row_order,
                                      std::span<const std::size_t> col_order) const {
    if (!is_permutation_of(row_order, m_) || !is_permutation_of(col_order, n_)) {
        throw Error(Errc::invalid_permutation, "row/column order is not a permutation");
    }
    PartialMatrix out(m_, n_);
    for (std::size_t r = 0; r < m_; ++r)
        for (std::size_t c = 0; c < n_; ++c) out.set(r, c, get(row_order[r], col_order[c]));
    return out;
}

PartialMatrix difference(const BinaryMatrix& full, const PartialMatrix& d) {
    if (full.rows() != d.rows() || full.cols() != d.cols()) {
        throw Error(Errc::dimension_mismatch, "partial and full matrix differ in shape");
    }
    PartialMatrix out(full.rows(), full.cols());
    for (std::size_t i = 0; i < full.rows(); ++i)
        for (std::size_t j = 0; j < full.cols(); ++j)
            if (!d.is_known(i, j)) out.set(i, j, full.get(i, j) ? Cell::one : Cell::zero);
    return out;
}

IndexSet::IndexSet(Side side, std::size_t universe)
    : side_(side), universe_(universe), bits_(words_for(universe), 0) {}

IndexSet::IndexSet(Side side, std::size_t universe, std::initializer_list<std::size_t> members)
    : IndexSet(side, universe) {
    for (std::size_t k : members) insert(k);
}

IndexSet IndexSet::all(Side side, std::size_t universe) {
    IndexSet out(side, universe);
    for (std::size_t k = 0; k < universe; ++k) out.insert(k);
    return out;
}

IndexSet IndexSet::from_mask(Side side, std::size_t universe, std::uint64_t mask) {
    if (universe > word_bits) throw Error(Errc::out_of_range, "mask universe exceeds 64");
    IndexSet out(side, universe);
    if (universe > 0) {
        const Word keep = universe == word_bits ? ~Word{0} : ((Word{1} << universe) - 1);
        out.bits_[0] = mask & keep;
    }
    return out;
}

void IndexSet::insert(std::size_t k) {
    if (k >= universe_) throw Error(Errc::out_of_range, "index " + std::to_string(k) + " outside index set");
    bits_[k / word_bits] |= Word{1} << (k % word_bits);
}

std::size_t IndexSet::size() const noexcept { return popcount(bits_); }

std::vector<std::size_t> IndexSet::members() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < universe_; ++k)
        if (contains(k)) out.push_back(k);
    return out;
}

IndexSet IndexSet::complemented() const {
    IndexSet out(side_, universe_);
    for (std::size_t k = 0; k < universe_; ++k)
        if (!contains(k)) out.insert(k);
    return out;
}

std::size_t ones_in_subarray(const BinaryMatrix& m, const IndexSet& rows, const IndexSet& cols) {
    if (rows.side() != Side::row || cols.side() != Side::column) {
        throw Error(Errc::side_mismatch, "expected a row set and a column set");
    }
    if (rows.universe() != m.rows() || cols.universe() != m.cols()) {
        throw Error(Errc::dimension_mismatch, "index set universe does not match matrix");
    }
    const auto c = cols.words();
    std::size_t total = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!rows.contains(i)) continue;
        const auto r = m.row(i);
        for (std::size_t w = 0; w < r.size(); ++w) total += static_cast<std::size_t>(std::popcount(r[w] & c[w]));
    }
    return total;
}

bool is_permutation_of(std::span<const std::size_t> perm, std::size_t size) {
    if (perm.size() != size) return false;
    std::vector<bool> seen(size, false);
    for (std::size_t v : perm) {
        if (v >= size || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

} // namespace defset
