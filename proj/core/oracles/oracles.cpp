#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

#include "defset/counting.hpp"
#include "defset/defining.hpp"
#include "defset/discrepancy.hpp"
#include "defset/error.hpp"
#include "defset/goodform.hpp"
#include "defset/rng.hpp"

namespace defset::oracle {

std::uint64_t to_mask(const BinaryMatrix& m) {
    if (m.cells() > 64) throw Error(Errc::too_large, "mask oracles need at most 64 cells");
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.get(i, j)) mask |= std::uint64_t{1} << (i * m.cols() + j);
    return mask;
}

BinaryMatrix from_mask(std::size_t rows, std::size_t cols, std::uint64_t mask) {
    BinaryMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, (mask >> (i * cols + j)) & 1u);
    return m;
}

void for_each_matrix(std::size_t rows, std::size_t cols, const std::function<void(const BinaryMatrix&)>& visit) {
    if (rows * cols > 24) throw Error(Errc::too_large, "exhaustive matrix scan limited to 24 cells");
    const std::uint64_t total = std::uint64_t{1} << (rows * cols);
    for (std::uint64_t mask = 0; mask < total; ++mask) visit(from_mask(rows, cols, mask));
}

std::map<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>, std::uint64_t>
class_sizes(std::size_t rows, std::size_t cols) {
    std::map<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>, std::uint64_t> out;
    for_each_matrix(rows, cols, [&](const BinaryMatrix& m) {
        const auto mg = margins_of(m);
        ++out[{mg.s, mg.t}];
    });
    return out;
}

std::vector<BinaryMatrix> class_members(const MarginSpec& margins) {
    std::vector<BinaryMatrix> out;
    for_each_matrix(margins.m(), margins.n(), [&](const BinaryMatrix& m) {
        if (margins_of(m) == margins) out.push_back(m);
    });
    return out;
}

bool reveals_unique(std::uint64_t revealed, std::uint64_t target, const std::vector<std::uint64_t>& others) {
    for (std::uint64_t other : others) {
        if (other != target && ((other ^ target) & revealed) == 0) return false;
    }
    return true;
}

std::size_t sds_bruteforce(const BinaryMatrix& m) {
    const std::size_t cells = m.cells();
    const std::uint64_t target = to_mask(m);
    std::vector<std::uint64_t> others;
    for (const auto& member : class_members(margins_of(m))) others.push_back(to_mask(member));

    for (std::size_t k = 0; k <= cells; ++k) {
        if (k == 0) {
            if (reveals_unique(0, target, others)) return 0;
            continue;
        }
        // Gosper's hack over k-subsets of the cells.
        std::uint64_t subset = (std::uint64_t{1} << k) - 1;
        const std::uint64_t limit = std::uint64_t{1} << cells;
        while (subset < limit) {
            if (reveals_unique(subset, target, others)) return k;
            const std::uint64_t low = subset & (~subset + 1);
            const std::uint64_t ripple = subset + low;
            subset = (((ripple ^ subset) >> 2) / low) | ripple;
        }
    }
    return cells;
}

std::int64_t max_discrepancy_bruteforce(const BinaryMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (rows + cols > 40) throw Error(Errc::too_large, "pair brute force limited to m + n <= 40");
    const auto cells = static_cast<std::int64_t>(m.cells());
    const auto e = static_cast<std::int64_t>(m.count_ones());
    std::vector<std::uint64_t> row_mask(rows, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (m.get(i, j)) row_mask[i] |= std::uint64_t{1} << j;

    std::int64_t best = 0;
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << rows); ++r) {
        const auto r_size = std::popcount(r);
        for (std::uint64_t c = 0; c < (std::uint64_t{1} << cols); ++c) {
            std::int64_t ones = 0;
            for (std::size_t i = 0; i < rows; ++i)
                if ((r >> i) & 1u) ones += std::popcount(row_mask[i] & c);
            const std::int64_t value = cells * ones - e * r_size * std::popcount(c);
            best = std::max(best, value < 0 ? -value : value);
        }
    }
    return best;
}

namespace {

BinaryMatrix random_matrix(std::size_t rows, std::size_t cols, SplitMix64& rng) {
    BinaryMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rng() & 1u);
    return m;
}

// Reveals a uniformly chosen number of uniformly chosen cells of m.
PartialMatrix random_subset(const BinaryMatrix& m, SplitMix64& rng) {
    std::vector<std::size_t> cells(m.cells());
    for (std::size_t k = 0; k < cells.size(); ++k) cells[k] = k;
    for (std::size_t k = cells.size(); k > 1; --k) std::swap(cells[k - 1], cells[rng.below(k)]);
    const std::size_t keep = rng.below(cells.size() + 1);
    PartialMatrix d(m.rows(), m.cols());
    for (std::size_t k = 0; k < keep; ++k) {
        const std::size_t i = cells[k] / m.cols();
        const std::size_t j = cells[k] % m.cols();
        d.set(i, j, m.get(i, j) ? Cell::one : Cell::zero);
    }
    return d;
}

PartialMatrix partial_from_base3(std::size_t rows, std::size_t cols, std::uint64_t code) {
    PartialMatrix p(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            p.set(i, j, static_cast<Cell>(code % 3));
            code /= 3;
        }
    }
    return p;
}

std::uint64_t pow3(std::size_t k) {
    std::uint64_t out = 1;
    while (k-- > 0) out *= 3;
    return out;
}

void report(std::ostream& log, const SuiteOutcome& s) {
    log << (s.failures == 0 ? "PASS " : "FAIL ") << s.name << ": " << s.cases << " cases, " << s.failures
        << " failures\n";
}

} // namespace

std::vector<SuiteOutcome> run_verification_suites(std::size_t max_dim, std::uint64_t seed, std::ostream& log) {
    if (max_dim == 0) throw Error(Errc::domain, "max-dim must be positive");
    const std::size_t small = std::min<std::size_t>(max_dim, 3);
    SplitMix64 rng(seed);
    std::vector<SuiteOutcome> out;

    {
        SuiteOutcome s{"counting_and_gale_ryser_vs_filter"};
        const std::size_t dim = std::min<std::size_t>(max_dim, 4);
        for (std::size_t m = 1; m <= dim; ++m) {
            for (std::size_t n = 1; n <= dim; ++n) {
                const auto sizes = class_sizes(m, n);
                // Every margin pair in range with equal totals, feasible or not.
                std::vector<std::int64_t> s_vec(m, 0), t_vec(n, 0);
                auto next = [](std::vector<std::int64_t>& v, std::int64_t hi) {
                    for (auto& x : v) {
                        if (++x <= hi) return true;
                        x = 0;
                    }
                    return false;
                };
                do {
                    std::fill(t_vec.begin(), t_vec.end(), 0);
                    do {
                        MarginSpec mg{s_vec, t_vec};
                        if (mg.total() != mg.column_total()) continue;
                        const auto it = sizes.find({s_vec, t_vec});
                        const std::uint64_t expect = it == sizes.end() ? 0 : it->second;
                        ++s.cases;
                        if (count_exact(mg) != expect || gale_ryser_feasible(mg) != (expect > 0)) ++s.failures;
                    } while (next(t_vec, static_cast<std::int64_t>(m)));
                } while (next(s_vec, static_cast<std::int64_t>(n)));
            }
        }
        out.push_back(s);
        report(log, s);
    }

    {
        SuiteOutcome s{"goodform_digraph_vs_bruteforce"};
        for (std::size_t m = 1; m <= small; ++m) {
            for (std::size_t n = 1; n <= small; ++n) {
                const std::uint64_t total = pow3(m * n);
                for (std::uint64_t code = 0; code < total; ++code) {
                    const PartialMatrix p = partial_from_base3(m, n, code);
                    const auto fast = permutable_to_good_form(p, PermuteMethod::digraph);
                    const auto slow = permutable_to_good_form(p, PermuteMethod::bruteforce);
                    ++s.cases;
                    if (fast.has_value() != slow.has_value() || (fast && !verify_witness(p, *fast)) ||
                        (slow && !verify_witness(p, *slow))) {
                        ++s.failures;
                    }
                }
            }
        }
        out.push_back(s);
        report(log, s);
    }

    {
        SuiteOutcome s{"defining_goodform_vs_uniqueness"};
        for (std::size_t m = 1; m <= small; ++m) {
            for (std::size_t n = 1; n <= small; ++n) {
                for_each_matrix(m, n, [&](const BinaryMatrix& full) {
                    const std::uint64_t cells = std::uint64_t{1} << (m * n);
                    for (std::uint64_t mask = 0; mask < cells; ++mask) {
                        PartialMatrix d(m, n);
                        for (std::size_t k = 0; k < m * n; ++k) {
                            if ((mask >> k) & 1u) {
                                d.set(k / n, k % n, full.get(k / n, k % n) ? Cell::one : Cell::zero);
                            }
                        }
                        ++s.cases;
                        if (is_defining(d, full, DefiningMethod::goodform) !=
                            is_defining(d, full, DefiningMethod::oracle)) {
                            ++s.failures;
                        }
                    }
                });
            }
        }
        for (std::size_t dim = 4; dim <= std::min<std::size_t>(max_dim, 5); ++dim) {
            for (int trial = 0; trial < 500; ++trial) {
                const BinaryMatrix full = random_matrix(dim, dim, rng);
                const PartialMatrix d = random_subset(full, rng);
                ++s.cases;
                if (is_defining(d, full, DefiningMethod::goodform) != is_defining(d, full, DefiningMethod::oracle)) {
                    ++s.failures;
                }
            }
        }
        out.push_back(s);
        report(log, s);
    }

    {
        SuiteOutcome s{"sds_exact_vs_subset_bruteforce"};
        auto check = [&](const BinaryMatrix& full) {
            const SdsResult r = sds_exact(full);
            ++s.cases;
            if (r.value != sds_bruteforce(full) || r.witness_d.size() != r.value ||
                !is_defining(r.witness_d, full, DefiningMethod::oracle)) {
                ++s.failures;
            }
        };
        for (std::size_t m = 1; m <= small; ++m)
            for (std::size_t n = 1; n <= small; ++n) for_each_matrix(m, n, check);
        if (max_dim >= 4) {
            for (int trial = 0; trial < 100; ++trial) check(random_matrix(4, 4, rng));
        }
        out.push_back(s);
        report(log, s);
    }

    {
        SuiteOutcome s{"max_discrepancy_reduced_vs_pairs"};
        auto check = [&](const BinaryMatrix& full) {
            const auto fast = max_discrepancy_exact(full);
            ++s.cases;
            if (fast.value.magnitude() != max_discrepancy_bruteforce(full) ||
                delta_scaled(full, fast.rows, fast.cols) != fast.value) {
                ++s.failures;
            }
        };
        for (std::size_t m = 1; m <= small; ++m)
            for (std::size_t n = 1; n <= small; ++n) for_each_matrix(m, n, check);
        for (std::size_t dim = 4; dim <= std::min<std::size_t>(max_dim, 8); ++dim) {
            for (int trial = 0; trial < 10; ++trial) check(random_matrix(dim, dim, rng));
        }
        out.push_back(s);
        report(log, s);
    }

    return out;
}

} // namespace defset::oracle
