#include "defset/defining.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "defset/counting.hpp"
#include "defset/error.hpp"
#include "defset/rng.hpp"

namespace defset {

WalkSplitCounts split_counts(const BinaryMatrix& m, const GoodFormWitness& w) {
    const BinaryMatrix arranged = m.permuted(w.row_perm, w.col_perm);
    WalkSplitCounts out;
    for (std::size_t r = 0; r < arranged.rows(); ++r) {
        for (std::size_t c = 0; c < arranged.cols(); ++c) {
            const bool one = arranged.get(r, c);
            if (w.walk.below(r, c)) (one ? out.beta1 : out.beta0)++;
            else (one ? out.alpha1 : out.alpha0)++;
        }
    }
    return out;
}

PartialMatrix defining_set_from_witness(const BinaryMatrix& m, const GoodFormWitness& w) {
    if (!is_permutation_of(w.row_perm, m.rows()) || !is_permutation_of(w.col_perm, m.cols())) {
        throw Error(Errc::invalid_permutation, "witness permutations do not match the matrix");
    }
    PartialMatrix d(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const std::size_t i = w.row_perm[r];
            const std::size_t j = w.col_perm[c];
            const bool one = m.get(i, j);
            if (w.walk.below(r, c) != one) d.set(i, j, one ? Cell::one : Cell::zero);
        }
    }
    return d;
}

namespace {

struct CompletionCounter {
    const PartialMatrix& p;
    std::vector<std::int64_t> row_need, row_free, col_need, col_free;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    std::uint64_t cap;
    std::uint64_t found = 0;

    void run(std::size_t k) {
        if (found >= cap) return;
        if (k == cells.size()) {
            ++found;
            return;
        }
        const auto [i, j] = cells[k];
        --row_free[i];
        --col_free[j];
        if (row_need[i] > 0 && col_need[j] > 0) {
            --row_need[i];
            --col_need[j];
            run(k + 1);
            ++row_need[i];
            ++col_need[j];
        }
        if (row_free[i] >= row_need[i] && col_free[j] >= col_need[j]) run(k + 1);
        ++row_free[i];
        ++col_free[j];
    }
};

} // namespace

std::uint64_t count_completions(const PartialMatrix& p, const MarginSpec& margins, std::uint64_t cap) {
    margins.validate();
    if (margins.m() != p.rows() || margins.n() != p.cols()) {
        throw Error(Errc::dimension_mismatch, "margins do not match the partial matrix");
    }
    if (cap == 0) throw Error(Errc::domain, "completion cap must be positive");

    CompletionCounter counter{p, margins.s, {}, margins.t, {}, {}, cap};
    counter.row_free.assign(p.rows(), 0);
    counter.col_free.assign(p.cols(), 0);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j) {
            switch (p.get(i, j)) {
            case Cell::one:
                --counter.row_need[i];
                --counter.col_need[j];
                break;
            case Cell::zero: break;
            case Cell::unknown:
                ++counter.row_free[i];
                ++counter.col_free[j];
                counter.cells.emplace_back(i, j);
                break;
            }
        }
    }
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (counter.row_need[i] < 0 || counter.row_need[i] > counter.row_free[i]) {
            throw Error(Errc::inconsistent_partial, "row " + std::to_string(i + 1) + " already violates its margin");
        }
    }
    for (std::size_t j = 0; j < p.cols(); ++j) {
        if (counter.col_need[j] < 0 || counter.col_need[j] > counter.col_free[j]) {
            throw Error(Errc::inconsistent_partial,
                        "column " + std::to_string(j + 1) + " already violates its margin");
        }
    }
    counter.run(0);
    return counter.found;
}

bool is_defining(const PartialMatrix& d, const BinaryMatrix& m, DefiningMethod method) {
    if (d.rows() != m.rows() || d.cols() != m.cols()) {
        throw Error(Errc::dimension_mismatch, "defining set and matrix differ in shape");
    }
    if (!d.contained_in(m)) return false;
    if (method == DefiningMethod::goodform) return permutable_to_good_form(difference(m, d)).has_value();
    return count_completions(d, margins_of(m), 2) == 1;
}

ColumnOrderCost min_cost_for_column_order(const BinaryMatrix& m, std::span<const std::size_t> col_order) {
    if (!is_permutation_of(col_order, m.cols())) {
        throw Error(Errc::invalid_permutation, "column order is not a permutation");
    }
    std::vector<std::size_t> threshold(m.rows());
    ColumnOrderCost out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        // cost(f) = zeros among the first f ordered columns + ones among the rest
        std::size_t cost = m.row_ones(i);
        std::size_t best = cost;
        std::size_t best_f = 0;
        for (std::size_t f = 1; f <= m.cols(); ++f) {
            cost = m.get(i, col_order[f - 1]) ? cost - 1 : cost + 1;
            if (cost <= best) {
                best = cost;
                best_f = f;
            }
        }
        threshold[i] = best_f;
        out.cost += best;
    }
    std::vector<std::size_t> rows(m.rows());
    std::iota(rows.begin(), rows.end(), 0);
    std::stable_sort(rows.begin(), rows.end(), [&](auto a, auto b) { return threshold[a] < threshold[b]; });
    std::vector<std::size_t> f(m.rows());
    for (std::size_t r = 0; r < rows.size(); ++r) f[r] = threshold[rows[r]];
    out.witness = GoodFormWitness{std::move(rows), {col_order.begin(), col_order.end()}, Walk(std::move(f), m.cols())};
    return out;
}

namespace {

std::uint64_t factorial_or_overflow(std::size_t k) {
    std::uint64_t out = 1;
    for (std::size_t v = 2; v <= k; ++v) {
        if (out > std::numeric_limits<std::uint64_t>::max() / v) return std::numeric_limits<std::uint64_t>::max();
        out *= v;
    }
    return out;
}

// Depth-first search over column orders in lexicographic order with an
// admissible per-row bound. Among optimal orders the lexicographically
// smallest is kept.
class ColumnOrderSearch {
public:
    explicit ColumnOrderSearch(const BinaryMatrix& a) : a_(a), k_(a.cols()), rows_(a.rows()) {
        ones_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) ones_[i] = static_cast<std::int64_t>(a.row_ones(i));
        // duplicate_of_[c]: nearest smaller index with an identical column, or k_.
        duplicate_of_.assign(k_, k_);
        for (std::size_t c = 0; c < k_; ++c) {
            for (std::size_t b = c; b-- > 0;) {
                bool same = true;
                for (std::size_t i = 0; i < rows_ && same; ++i) same = a.get(i, b) == a.get(i, c);
                if (same) {
                    duplicate_of_[c] = b;
                    break;
                }
            }
        }
    }

    std::vector<std::size_t> run() {
        std::vector<std::int64_t> d(rows_, 0), min_d(rows_, 0), zeros(rows_, 0);
        used_.assign(k_, false);
        prefix_.clear();
        best_ = std::numeric_limits<std::int64_t>::max();
        descend(d, min_d, zeros);
        return best_order_;
    }

    std::int64_t best() const noexcept { return best_; }

private:
    void descend(const std::vector<std::int64_t>& d, const std::vector<std::int64_t>& min_d,
                 const std::vector<std::int64_t>& zeros) {
        std::int64_t bound = 0;
        for (std::size_t i = 0; i < rows_; ++i) bound += std::min(ones_[i] + min_d[i], zeros[i]);
        if (prefix_.size() == k_) {
            if (bound < best_) {
                best_ = bound;
                best_order_ = prefix_;
            }
            return;
        }
        if (bound >= best_) return;

        std::vector<std::int64_t> nd(rows_), nmin(rows_), nzeros(rows_);
        for (std::size_t c = 0; c < k_; ++c) {
            if (used_[c]) continue;
            if (duplicate_of_[c] != k_ && !used_[duplicate_of_[c]]) continue;
            for (std::size_t i = 0; i < rows_; ++i) {
                const bool one = a_.get(i, c);
                nd[i] = d[i] + (one ? -1 : 1);
                nmin[i] = std::min(min_d[i], nd[i]);
                nzeros[i] = zeros[i] + (one ? 0 : 1);
            }
            used_[c] = true;
            prefix_.push_back(c);
            descend(nd, nmin, nzeros);
            prefix_.pop_back();
            used_[c] = false;
        }
    }

    const BinaryMatrix& a_;
    std::size_t k_;
    std::size_t rows_;
    std::vector<std::int64_t> ones_;
    std::vector<std::size_t> duplicate_of_;
    std::vector<bool> used_;
    std::vector<std::size_t> prefix_;
    std::vector<std::size_t> best_order_;
    std::int64_t best_ = 0;
};

// Builds the result for M from an optimal column order of `a`, where `a` is M
// or (when `transposed`) its transpose.
SdsResult finish(const BinaryMatrix& m, const BinaryMatrix& a, bool transposed,
                 std::span<const std::size_t> order, bool exact) {
    const ColumnOrderCost best = min_cost_for_column_order(a, order);
    SdsResult out;
    out.value = best.cost;
    out.exact = exact;
    if (!transposed) {
        out.witness_d = defining_set_from_witness(m, best.witness);
        out.witness = best.witness;
        return out;
    }
    out.witness_d = defining_set_from_witness(a, best.witness).transposed();
    // Transposing and reversing both orders maps a staircase onto a staircase.
    std::vector<std::size_t> rows(best.witness.col_perm.rbegin(), best.witness.col_perm.rend());
    std::vector<std::size_t> cols(best.witness.row_perm.rbegin(), best.witness.row_perm.rend());
    const PartialMatrix rest = difference(m, out.witness_d);
    if (auto walk = witness_walk(rest.permuted(rows, cols))) {
        out.witness = GoodFormWitness{std::move(rows), std::move(cols), std::move(*walk)};
    } else {
        out.witness = *permutable_to_good_form(rest);
    }
    return out;
}

std::int64_t order_cost(const BinaryMatrix& a, std::span<const std::size_t> order) {
    return static_cast<std::int64_t>(min_cost_for_column_order(a, order).cost);
}

} // namespace

SdsResult sds_exact(const BinaryMatrix& m, std::uint64_t cap_factorial) {
    const bool transposed = m.cols() > m.rows();
    const std::size_t side = std::min(m.rows(), m.cols());
    if (factorial_or_overflow(side) > cap_factorial) {
        throw Error(Errc::cap_exceeded, std::to_string(side) + "! column orders exceed the factorial cap");
    }
    const BinaryMatrix a = transposed ? m.transposed() : m;
    ColumnOrderSearch search(a);
    const auto order = search.run();
    return finish(m, a, transposed, order, true);
}

SdsResult sds_heuristic(const BinaryMatrix& m, std::size_t restarts, std::uint64_t seed) {
    const bool transposed = m.cols() > m.rows();
    const BinaryMatrix a = transposed ? m.transposed() : m;
    const std::size_t k = a.cols();
    SplitMix64 rng(seed);

    std::vector<std::size_t> best_order(k);
    std::iota(best_order.begin(), best_order.end(), 0);
    std::int64_t best = order_cost(a, best_order);

    for (std::size_t restart = 0; restart < std::max<std::size_t>(restarts, 1); ++restart) {
        std::vector<std::size_t> order(k);
        std::iota(order.begin(), order.end(), 0);
        if (restart > 0) {
            for (std::size_t i = k; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        }
        std::int64_t cost = order_cost(a, order);
        while (true) {
            std::int64_t step_best = cost;
            std::size_t step_at = k;
            for (std::size_t p = 0; p + 1 < k; ++p) {
                std::swap(order[p], order[p + 1]);
                const auto c = order_cost(a, order);
                std::swap(order[p], order[p + 1]);
                if (c < step_best) {
                    step_best = c;
                    step_at = p;
                }
            }
            if (step_at == k) break;
            std::swap(order[step_at], order[step_at + 1]);
            cost = step_best;
        }
        if (cost < best) {
            best = cost;
            best_order = order;
        }
    }
    return finish(m, a, transposed, best_order, false);
}

SdsResult sds_best_effort(const BinaryMatrix& m, std::uint64_t cap_factorial, std::uint64_t seed) {
    if (factorial_or_overflow(std::min(m.rows(), m.cols())) <= cap_factorial) return sds_exact(m, cap_factorial);
    return sds_heuristic(m, 50, seed);
}

std::size_t trivial_defining_bound(const BinaryMatrix& m) {
    const std::size_t ones = m.count_ones();
    return std::min(ones, m.cells() - ones);
}

PartialMatrix minimalize_to_critical(const PartialMatrix& d, const BinaryMatrix& m, std::span<const CellIndex> order) {
    if (!is_defining(d, m)) throw Error(Errc::not_defining, "minimalize_to_critical needs a defining set");
    std::vector<CellIndex> row_major;
    if (order.empty()) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) row_major.emplace_back(i, j);
        order = row_major;
    }
    PartialMatrix current = d;
    for (const auto& [i, j] : order) {
        if (i >= m.rows() || j >= m.cols()) throw Error(Errc::out_of_range, "cell outside the matrix");
        const Cell kept = current.get(i, j);
        if (kept == Cell::unknown) continue;
        current.set(i, j, Cell::unknown);
        if (!is_defining(current, m)) current.set(i, j, kept);
    }
    return current;
}

bool is_critical(const PartialMatrix& d, const BinaryMatrix& m) {
    if (!is_defining(d, m)) return false;
    PartialMatrix trial = d;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j) {
            const Cell kept = d.get(i, j);
            if (kept == Cell::unknown) continue;
            trial.set(i, j, Cell::unknown);
            const bool still = is_defining(trial, m);
            trial.set(i, j, kept);
            if (still) return false;
        }
    }
    return true;
}

std::size_t maxsds_exact(const MarginSpec& margins, std::uint64_t class_cap) {
    if (!gale_ryser_feasible(margins)) throw Error(Errc::empty_class, "margins admit no matrix");
    std::size_t best = 0;
    for (const auto& member : enumerate_class(margins, class_cap)) best = std::max(best, sds_exact(member).value);
    return best;
}

} // namespace defset
