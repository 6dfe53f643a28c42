#include "defset/margins.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "defset/error.hpp"

namespace defset {

void MarginSpec::validate() const {
    if (s.empty() || t.empty()) throw Error(Errc::dimension_mismatch, "margins need at least one row and column");
    const auto n_ = static_cast<std::int64_t>(n());
    const auto m_ = static_cast<std::int64_t>(m());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] > n_) {
            throw Error(Errc::out_of_range, "row sum s_" + std::to_string(i + 1) + " = " + std::to_string(s[i]) +
                                                " outside [0, " + std::to_string(n_) + "]");
        }
    }
    for (std::size_t j = 0; j < t.size(); ++j) {
        if (t[j] < 0 || t[j] > m_) {
            throw Error(Errc::out_of_range, "column sum t_" + std::to_string(j + 1) + " = " + std::to_string(t[j]) +
                                                " outside [0, " + std::to_string(m_) + "]");
        }
    }
    if (total() != column_total()) {
        throw Error(Errc::total_mismatch, "row total " + std::to_string(total()) + " != column total " +
                                              std::to_string(column_total()));
    }
}

MarginSpec MarginSpec::complemented() const {
    MarginSpec out{s, t};
    for (auto& v : out.s) v = static_cast<std::int64_t>(n()) - v;
    for (auto& v : out.t) v = static_cast<std::int64_t>(m()) - v;
    return out;
}

MarginSpec margins_of(const BinaryMatrix& m) {
    MarginSpec out;
    out.s.resize(m.rows());
    out.t.assign(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out.s[i] = static_cast<std::int64_t>(m.row_ones(i));
        for (std::size_t j = 0; j < m.cols(); ++j) out.t[j] += m.get(i, j);
    }
    return out;
}

MarginSpec regular_margins(std::size_t n, std::int64_t k) {
    return {std::vector<std::int64_t>(n, k), std::vector<std::int64_t>(n, k)};
}

bool gale_ryser_unchecked(std::vector<std::int64_t> rows, const std::vector<std::int64_t>& cols) {
    std::sort(rows.begin(), rows.end(), std::greater<>());
    std::int64_t lhs = 0;
    for (std::size_t k = 1; k <= rows.size(); ++k) {
        lhs += rows[k - 1];
        std::int64_t rhs = 0;
        for (std::int64_t c : cols) rhs += std::min<std::int64_t>(c, static_cast<std::int64_t>(k));
        if (lhs > rhs) return false;
    }
    return true;
}

bool gale_ryser_feasible(const MarginSpec& margins) {
    margins.validate();
    return gale_ryser_unchecked(margins.s, margins.t);
}

} // namespace defset
