#include "defset/goodform.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>

#include "defset/error.hpp"

namespace defset {

Walk::Walk(std::vector<std::size_t> thresholds, std::size_t cols) {
    f_.reserve(thresholds.size() + 1);
    for (std::size_t v : thresholds) {
        if (v > cols || v < f_.back()) throw Error(Errc::domain, "walk thresholds must be weakly increasing in [0, n]");
        f_.push_back(v);
    }
}

namespace {

// Rightmost revealed one (1-based, 0 if none) and leftmost revealed zero
// (1-based, n+1 if none) of row i.
std::pair<std::size_t, std::size_t> row_extremes(const PartialMatrix& p, std::size_t i) {
    std::size_t last_one = 0;
    std::size_t first_zero = p.cols() + 1;
    for (std::size_t j = 0; j < p.cols(); ++j) {
        const Cell c = p.get(i, j);
        if (c == Cell::one) last_one = j + 1;
        else if (c == Cell::zero && first_zero > p.cols()) first_zero = j + 1;
    }
    return {last_one, first_zero};
}

std::uint64_t factorial_capped(std::size_t k, std::uint64_t cap) {
    std::uint64_t out = 1;
    for (std::size_t v = 2; v <= k; ++v) {
        if (out > cap / v) return cap + 1;
        out *= v;
    }
    return out;
}

} // namespace

bool is_good_form(const PartialMatrix& p) {
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const auto [last_one, first_zero] = row_extremes(p, i);
        if (last_one > first_zero) return false;
    }
    for (std::size_t j = 0; j < p.cols(); ++j) {
        std::size_t last_zero = 0;
        std::size_t first_one = p.rows() + 1;
        for (std::size_t i = 0; i < p.rows(); ++i) {
            const Cell c = p.get(i, j);
            if (c == Cell::zero) last_zero = i + 1;
            else if (c == Cell::one && first_one > p.rows()) first_one = i + 1;
        }
        if (last_zero > first_one) return false;
    }
    return true;
}

bool walk_is_valid(const PartialMatrix& p, const Walk& w) {
    if (w.rows() != p.rows()) return false;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (w.f(i + 1) > p.cols()) return false;
        const auto [last_one, first_zero] = row_extremes(p, i);
        if (last_one > w.f(i + 1) || first_zero <= w.f(i + 1)) return false;
    }
    return true;
}

std::optional<Walk> witness_walk(const PartialMatrix& p) {
    std::vector<std::size_t> f(p.rows());
    std::size_t prev = 0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const auto [last_one, first_zero] = row_extremes(p, i);
        prev = std::max(prev, last_one);
        if (first_zero <= prev) return std::nullopt;
        f[i] = prev;
    }
    return Walk(std::move(f), p.cols());
}

ColumnPrecedenceDigraph::ColumnPrecedenceDigraph(const PartialMatrix& p)
    : n_(p.cols()), stride_(words_for(p.cols())), succ_(n_ * stride_, 0) {
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const auto known = p.known_row(i);
        const auto values = p.value_row(i);
        std::vector<Word> zeros(stride_);
        bool any_zero = false;
        for (std::size_t w = 0; w < stride_; ++w) {
            zeros[w] = known[w] & ~values[w];
            any_zero = any_zero || zeros[w] != 0;
        }
        if (!any_zero) continue;
        for (std::size_t a = 0; a < n_; ++a) {
            if (p.get(i, a) != Cell::one) continue;
            for (std::size_t w = 0; w < stride_; ++w) succ_[a * stride_ + w] |= zeros[w];
        }
    }
}

std::optional<std::vector<std::size_t>> ColumnPrecedenceDigraph::topological_order() const {
    std::vector<std::size_t> indegree(n_, 0);
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) indegree[b] += has_edge(a, b);

    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < n_; ++v)
        if (indegree[v] == 0) ready.push(v);

    std::vector<std::size_t> order;
    order.reserve(n_);
    while (!ready.empty()) {
        const std::size_t a = ready.top();
        ready.pop();
        order.push_back(a);
        for (std::size_t b = 0; b < n_; ++b) {
            if (has_edge(a, b) && --indegree[b] == 0) ready.push(b);
        }
    }
    if (order.size() != n_) return std::nullopt;
    return order;
}

namespace {

std::optional<GoodFormWitness> by_digraph(const PartialMatrix& p) {
    auto order = ColumnPrecedenceDigraph(p).topological_order();
    if (!order) return std::nullopt;

    std::vector<std::size_t> position(p.cols());
    for (std::size_t k = 0; k < order->size(); ++k) position[(*order)[k]] = k;

    // a_i: position (1-based) of the rightmost revealed one under the column order.
    std::vector<std::size_t> rightmost(p.rows(), 0);
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (p.get(i, j) == Cell::one) rightmost[i] = std::max(rightmost[i], position[j] + 1);

    std::vector<std::size_t> rows(p.rows());
    std::iota(rows.begin(), rows.end(), 0);
    std::stable_sort(rows.begin(), rows.end(), [&](auto a, auto b) { return rightmost[a] < rightmost[b]; });

    std::vector<std::size_t> f(p.rows());
    for (std::size_t r = 0; r < rows.size(); ++r) f[r] = rightmost[rows[r]];

    return GoodFormWitness{std::move(rows), std::move(*order), Walk(std::move(f), p.cols())};
}

std::optional<GoodFormWitness> by_bruteforce(const PartialMatrix& p, std::uint64_t cap) {
    const auto rows_fact = factorial_capped(p.rows(), cap);
    const auto cols_fact = factorial_capped(p.cols(), cap);
    if (rows_fact > cap || cols_fact > cap || rows_fact > cap / cols_fact) {
        throw Error(Errc::cap_exceeded, "m!*n! exceeds the brute-force cap");
    }
    std::vector<std::size_t> rows(p.rows());
    std::iota(rows.begin(), rows.end(), 0);
    do {
        std::vector<std::size_t> cols(p.cols());
        std::iota(cols.begin(), cols.end(), 0);
        do {
            if (auto walk = witness_walk(p.permuted(rows, cols))) {
                return GoodFormWitness{rows, cols, std::move(*walk)};
            }
        } while (std::next_permutation(cols.begin(), cols.end()));
    } while (std::next_permutation(rows.begin(), rows.end()));
    return std::nullopt;
}

} // namespace

std::optional<GoodFormWitness> permutable_to_good_form(const PartialMatrix& p, PermuteMethod method,
                                                       std::uint64_t bruteforce_cap) {
    return method == PermuteMethod::digraph ? by_digraph(p) : by_bruteforce(p, bruteforce_cap);
}

bool verify_witness(const PartialMatrix& p, const GoodFormWitness& w) {
    if (!is_permutation_of(w.row_perm, p.rows()) || !is_permutation_of(w.col_perm, p.cols())) return false;
    return walk_is_valid(p.permuted(w.row_perm, w.col_perm), w.walk);
}

} // namespace defset
