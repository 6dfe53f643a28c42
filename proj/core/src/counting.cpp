#include "defset/counting.hpp"

#include <algorithm>
#include <cmath>

#include "defset/error.hpp"

namespace defset {

namespace {

// Visits every 0/1 pattern with `need` ones on columns of positive residual,
// in lexicographic order of the row string ('0' before '1').
template <typename Visit>
bool for_each_row_pattern(const std::vector<std::int64_t>& residual, std::int64_t need, std::vector<char>& pattern,
                          std::size_t j, Visit&& visit) {
    const std::size_t n = residual.size();
    if (j == n) return need == 0 ? visit(pattern) : true;
    std::int64_t available = 0;
    for (std::size_t k = j; k < n; ++k) available += residual[k] > 0;
    if (available < need) return true;
    if (available > need || residual[j] == 0) {
        pattern[j] = 0;
        if (!for_each_row_pattern(residual, need, pattern, j + 1, visit)) return false;
    }
    if (need > 0 && residual[j] > 0) {
        pattern[j] = 1;
        if (!for_each_row_pattern(residual, need - 1, pattern, j + 1, visit)) return false;
        pattern[j] = 0;
    }
    return true;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    BigInt out = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

} // namespace

MarginClass::MarginClass(MarginSpec margins) : margins_(std::move(margins)) { margins_.validate(); }

BigInt MarginClass::completions(std::size_t row, const std::vector<std::int64_t>& residual) {
    std::vector<std::int64_t> key = residual;
    std::sort(key.begin(), key.end());
    if (row == margins_.m()) return key.back() == 0 ? 1 : 0;

    const std::vector<std::int64_t> remaining(margins_.s.begin() + static_cast<std::ptrdiff_t>(row), margins_.s.end());
    if (!gale_ryser_unchecked(remaining, key)) return 0;

    auto memo_key = std::make_pair(row, key);
    if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

    // Columns with equal residual are interchangeable: choose how many of each
    // group receive a one and weight by the binomial number of choices.
    std::vector<std::pair<std::int64_t, std::int64_t>> groups; // (residual value, multiplicity)
    for (std::int64_t v : key) {
        if (v == 0) continue;
        if (groups.empty() || groups.back().first != v) groups.emplace_back(v, 0);
        ++groups.back().second;
    }
    BigInt total = 0;
    std::vector<std::int64_t> next = key;
    auto place = [&](auto&& self, std::size_t g, std::int64_t need, BigInt weight) -> void {
        if (g == groups.size()) {
            if (need == 0) total += weight * completions(row + 1, next);
            return;
        }
        const auto [value, count] = groups[g];
        // The group's columns sit contiguously in `next`, ordered by value.
        const auto first = static_cast<std::size_t>(std::lower_bound(key.begin(), key.end(), value) - key.begin());
        for (std::int64_t x = 0; x <= std::min(count, need); ++x) {
            for (std::int64_t k = 0; k < count; ++k) next[first + static_cast<std::size_t>(k)] = value - (k < x ? 1 : 0);
            self(self, g + 1, need - x, weight * binomial(count, x));
        }
        for (std::int64_t k = 0; k < count; ++k) next[first + static_cast<std::size_t>(k)] = value;
    };
    place(place, 0, margins_.s[row], BigInt{1});
    memo_.emplace(std::move(memo_key), total);
    return total;
}

const BigInt& MarginClass::size() {
    if (!size_) size_ = completions(0, margins_.t);
    return *size_;
}

BinaryMatrix MarginClass::unrank(const BigInt& index) {
    if (index < 0 || index >= size()) throw Error(Errc::out_of_range, "class index out of range");
    BigInt rest = index;
    BinaryMatrix out(margins_.m(), margins_.n());
    std::vector<std::int64_t> residual = margins_.t;
    std::vector<char> pattern(margins_.n(), 0);
    for (std::size_t i = 0; i < margins_.m(); ++i) {
        std::vector<char> chosen;
        for_each_row_pattern(residual, margins_.s[i], pattern, 0, [&](const std::vector<char>& p) {
            std::vector<std::int64_t> next = residual;
            for (std::size_t j = 0; j < p.size(); ++j) next[j] -= p[j];
            const BigInt c = completions(i + 1, next);
            if (rest < c) {
                chosen = p;
                return false;
            }
            rest -= c;
            return true;
        });
        for (std::size_t j = 0; j < chosen.size(); ++j) {
            out.set(i, j, chosen[j] != 0);
            residual[j] -= chosen[j];
        }
    }
    return out;
}

void MarginClass::enumerate(const std::function<bool(const BinaryMatrix&)>& visit) const {
    const std::size_t m = margins_.m();
    BinaryMatrix current(m, margins_.n());
    std::vector<std::int64_t> residual = margins_.t;
    std::vector<std::vector<char>> patterns(m, std::vector<char>(margins_.n(), 0));

    auto rows_from = [&](std::size_t i) {
        return std::vector<std::int64_t>(margins_.s.begin() + static_cast<std::ptrdiff_t>(i), margins_.s.end());
    };
    if (!gale_ryser_unchecked(rows_from(0), residual)) return;

    auto descend = [&](auto&& self, std::size_t i) -> bool {
        if (i == m) return visit(current);
        return for_each_row_pattern(residual, margins_.s[i], patterns[i], 0, [&](const std::vector<char>& p) {
            for (std::size_t j = 0; j < p.size(); ++j) residual[j] -= p[j];
            bool keep_going = true;
            if (gale_ryser_unchecked(rows_from(i + 1), residual)) {
                for (std::size_t j = 0; j < p.size(); ++j) current.set(i, j, p[j] != 0);
                keep_going = self(self, i + 1);
            }
            for (std::size_t j = 0; j < p.size(); ++j) residual[j] += p[j];
            return keep_going;
        });
    };
    descend(descend, 0);
}

BigInt count_exact(const MarginSpec& margins) { return MarginClass(margins).size(); }

std::vector<BinaryMatrix> enumerate_class(const MarginSpec& margins, std::uint64_t cap) {
    MarginClass cls(margins);
    if (cls.size() > cap) throw Error(Errc::cap_exceeded, "class size exceeds the enumeration cap");
    std::vector<BinaryMatrix> out;
    out.reserve(cls.size().convert_to<std::size_t>());
    cls.enumerate([&](const BinaryMatrix& member) {
        out.push_back(member);
        return true;
    });
    return out;
}

double log_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) throw Error(Errc::domain, "binomial argument out of range");
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

CountEstimate estimate_count_leading(const MarginSpec& margins) {
    margins.validate();
    const auto m = static_cast<std::int64_t>(margins.m());
    const auto n = static_cast<std::int64_t>(margins.n());
    const std::int64_t cells = m * n;
    const std::int64_t e = margins.total();
    CountEstimate out;
    if (e == 0 || e == cells) {
        out.degenerate = true;
        return out;
    }
    out.log_inverse_global = -log_binomial(cells, e);
    for (auto si : margins.s) out.log_row_product += log_binomial(n, si);
    for (auto tj : margins.t) out.log_col_product += log_binomial(m, tj);
    out.log_value = out.log_inverse_global + out.log_row_product + out.log_col_product;
    const double lambda = static_cast<double>(e) / static_cast<double>(cells);
    out.entropy_term = -(lambda * std::log(lambda) + (1.0 - lambda) * std::log1p(-lambda)) * static_cast<double>(cells);
    return out;
}

} // namespace defset
