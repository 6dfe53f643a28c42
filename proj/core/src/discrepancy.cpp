#include "defset/discrepancy.hpp"

#include <bit>
#include <cmath>

#include "defset/error.hpp"
#include "defset/rng.hpp"

namespace defset {

DiscrepancyValue delta_scaled(const BinaryMatrix& m, const IndexSet& rows, const IndexSet& cols) {
    const auto ones = static_cast<std::int64_t>(ones_in_subarray(m, rows, cols));
    const auto cells = static_cast<std::int64_t>(m.cells());
    const auto e = static_cast<std::int64_t>(m.count_ones());
    return {cells * ones - e * static_cast<std::int64_t>(rows.size() * cols.size()), cells};
}

namespace {

// Exact scan with subsets of the rows of `a` enumerated; a.rows() <= 25.
struct ScanResult {
    std::int64_t scaled = 0;
    std::uint64_t rows = 0;
    std::vector<bool> cols;
};

ScanResult scan_rows(const BinaryMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const auto cells = static_cast<std::int64_t>(a.cells());
    const auto e = static_cast<std::int64_t>(a.count_ones());

    std::vector<std::uint32_t> column_mask(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a.get(i, j)) column_mask[j] |= std::uint32_t{1} << i;

    ScanResult best{0, 0, std::vector<bool>(n, false)};
    std::int64_t best_magnitude = 0;
    std::vector<std::int64_t> surplus(n);
    const std::uint64_t subsets = std::uint64_t{1} << m;
    for (std::uint64_t r = 1; r < subsets; ++r) {
        const auto mask = static_cast<std::uint32_t>(r);
        const std::int64_t expected = e * std::popcount(mask);
        std::int64_t pos = 0;
        std::int64_t neg = 0;
        for (std::size_t j = 0; j < n; ++j) {
            surplus[j] = cells * std::popcount(column_mask[j] & mask) - expected;
            if (surplus[j] > 0) pos += surplus[j];
            else neg += surplus[j];
        }
        const bool take_pos = pos >= -neg;
        const std::int64_t candidate = take_pos ? pos : neg;
        const std::int64_t magnitude = take_pos ? pos : -neg;
        if (magnitude > best_magnitude) {
            best_magnitude = magnitude;
            best.scaled = candidate;
            best.rows = r;
            for (std::size_t j = 0; j < n; ++j) best.cols[j] = take_pos ? surplus[j] > 0 : surplus[j] < 0;
        }
    }
    return best;
}

} // namespace

MaxDiscrepancy max_discrepancy_exact(const BinaryMatrix& m) {
    const bool transposed = m.rows() > m.cols();
    if (std::min(m.rows(), m.cols()) > max_exact_discrepancy_side) {
        throw Error(Errc::too_large, "exact discrepancy scan needs min(m, n) <= 25");
    }
    const BinaryMatrix a = transposed ? m.transposed() : m;
    const ScanResult scan = scan_rows(a);

    IndexSet enumerated(transposed ? Side::column : Side::row, a.rows());
    for (std::size_t k = 0; k < a.rows(); ++k)
        if ((scan.rows >> k) & 1u) enumerated.insert(k);
    IndexSet partner(transposed ? Side::row : Side::column, a.cols());
    for (std::size_t k = 0; k < a.cols(); ++k)
        if (scan.cols[k]) partner.insert(k);

    DiscrepancyValue value{scan.scaled, static_cast<std::int64_t>(m.cells())};
    if (transposed) return {value, std::move(partner), std::move(enumerated)};
    return {value, std::move(enumerated), std::move(partner)};
}

MaxDiscrepancy max_discrepancy_sampled(const BinaryMatrix& m, std::uint64_t trials, std::uint64_t seed) {
    SplitMix64 rng(seed);
    MaxDiscrepancy best{{0, static_cast<std::int64_t>(m.cells())}, IndexSet(Side::row, m.rows()),
                        IndexSet(Side::column, m.cols())};
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        IndexSet rows(Side::row, m.rows());
        IndexSet cols(Side::column, m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (rng() & 1u) rows.insert(i);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (rng() & 1u) cols.insert(j);
        const auto value = delta_scaled(m, rows, cols);
        if (value.magnitude() > best.value.magnitude()) best = {value, std::move(rows), std::move(cols)};
    }
    return best;
}

double concentration_threshold(std::size_t m, std::size_t n, double c, double eps) {
    if (c <= 0.0 || eps < 0.0) throw Error(Errc::domain, "threshold needs c > 0 and eps >= 0");
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return c * (md * std::pow(nd, 0.5 + eps) + nd * std::pow(md, 0.5 + eps));
}

namespace {

// Smallest x >= 0 with x^4 >= target.
std::size_t ceil_fourth_root(UInt128 target) {
    auto x = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(target), 0.25)));
    auto fourth = [](std::size_t v) {
        const auto w = static_cast<UInt128>(v);
        return w * w * w * w;
    };
    while (x > 0 && fourth(x - 1) >= target) --x;
    while (fourth(x) < target) ++x;
    return x;
}

} // namespace

std::size_t CertificateInput::block_height() const {
    const auto md = static_cast<UInt128>(m);
    return ceil_fourth_root(md * md * md);
}

std::size_t CertificateInput::block_count() const { return ceil_fourth_root(m); }

std::int64_t walk_lower_bound_certificate(const CertificateInput& input) {
    const Int128 p = input.lambda.num;
    const Int128 q = input.lambda.den;
    if (q <= 0 || p <= 0 || 2 * p > q) throw Error(Errc::domain, "certificate needs 0 < lambda <= 1/2");
    if (input.m == 0 || input.n == 0 || input.delta_scaled_bound < 0) {
        throw Error(Errc::domain, "certificate needs positive dimensions and a non-negative bound");
    }
    const Int128 cells = static_cast<Int128>(input.m) * static_cast<Int128>(input.n);
    const Int128 h = input.block_height();
    const Int128 b = input.block_count();
    const Int128 n = input.n;
    // lambda mn - (nh + b Delta_scaled/(mn)) / lambda over the common denominator q p mn.
    const Int128 numerator = p * p * cells * cells - q * q * (n * h * cells + b * input.delta_scaled_bound);
    const Int128 denominator = q * p * cells;
    if (numerator <= 0) return 0;
    return static_cast<std::int64_t>((numerator + denominator - 1) / denominator);
}

} // namespace defset
