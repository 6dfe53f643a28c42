#include "defset/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "defset/error.hpp"

namespace defset {

double chernoff_bound(double gamma, double mu, ChernoffVariant variant) {
    if (mu < 0.0) throw Error(Errc::domain, "mu must be non-negative");
    if (variant == ChernoffVariant::upper) {
        if (!(gamma > 0.0)) throw Error(Errc::domain, "upper-tail bound needs gamma > 0");
        return std::exp(-gamma * gamma * mu / (2.0 + gamma));
    }
    if (!(gamma > 0.0 && gamma < 1.0)) throw Error(Errc::domain, "two-sided bound needs 0 < gamma < 1");
    return 2.0 * std::exp(-mu * gamma * gamma / 3.0);
}

bool HypothesisReport::overall() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

const HypothesisCheck* HypothesisReport::find(const std::string& name) const noexcept {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

double aspect_factor(std::size_t m, std::size_t n) {
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return 1.0 + 5.0 * md / (6.0 * nd) + 5.0 * nd / (6.0 * md);
}

} // namespace

double balance_lhs(std::size_t m, std::size_t n, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw Error(Errc::domain, "balance needs 0 < lambda < 1");
    const double skew = 1.0 - 2.0 * lambda;
    return skew * skew / (4.0 * lambda * (1.0 - lambda)) * aspect_factor(m, n);
}

double balance_lhs(std::size_t m, std::size_t n, Rational lambda) {
    const Int128 p = lambda.num;
    const Int128 q = lambda.den;
    if (p <= 0 || p >= q) throw Error(Errc::domain, "balance needs 0 < lambda < 1");
    // (1-2l)^2 / (4 l (1-l)) = (q - 2p)^2 / (4 p (q - p))
    const Int128 skew = q - 2 * p;
    if (skew == 0) return 0.0;
    const double ratio = static_cast<double>(skew * skew) / static_cast<double>(4 * p * (q - p));
    return ratio * aspect_factor(m, n);
}

HypothesisReport check_hypotheses(const MarginSpec& margins, const HypothesisParams& params) {
    HypothesisReport report;
    const std::size_t m = margins.m();
    const std::size_t n = margins.n();
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    auto add = [&](std::string name, bool holds, double lhs, double rhs) {
        report.checks.push_back({std::move(name), holds, lhs, rhs});
    };

    add("n_le_m", n <= m, nd, md);
    const auto rows_total = margins.total();
    const auto cols_total = margins.column_total();
    add("totals_equal", rows_total == cols_total, static_cast<double>(rows_total), static_cast<double>(cols_total));

    const Rational lambda{rows_total, static_cast<std::int64_t>(m * n)};
    const double lambda_d = lambda.to_double();
    add("lambda_le_half", 2 * lambda.num <= lambda.den, lambda_d, 0.5);
    add("lambda_ge_min", lambda_d >= params.lambda_min, lambda_d, params.lambda_min);

    const double s_mean = static_cast<double>(rows_total) / md;
    double row_dev = 0.0;
    for (auto si : margins.s) row_dev = std::max(row_dev, std::abs(static_cast<double>(si) - s_mean));
    const double row_allow = params.c_row * std::pow(nd, 0.5 + params.eps);
    add("row_regularity", row_dev <= row_allow, row_dev, row_allow);

    const double t_mean = static_cast<double>(cols_total) / nd;
    double col_dev = 0.0;
    for (auto tj : margins.t) col_dev = std::max(col_dev, std::abs(static_cast<double>(tj) - t_mean));
    const double col_allow = params.c_col * std::pow(md, 0.5 + params.eps);
    add("col_regularity", col_dev <= col_allow, col_dev, col_allow);

    const double rhs = std::log(md) / 3.0;
    if (lambda.num > 0 && lambda.num < lambda.den) {
        const double lhs = balance_lhs(m, n, lambda);
        add("balance", lhs <= rhs, lhs, rhs);
    } else {
        add("balance", false, std::numeric_limits<double>::infinity(), rhs);
    }
    return report;
}

FailureProbabilityBound failure_probability_bound(std::size_t m, std::size_t n, Rational lambda, double c,
                                                  double eps) {
    if (!(c > 0.0)) throw Error(Errc::domain, "c must be positive");
    if (lambda.den <= 0 || lambda.num <= 0 || 2 * lambda.num > lambda.den) {
        throw Error(Errc::domain, "failure bound needs 0 < lambda <= 1/2");
    }
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double l = lambda.to_double();
    FailureProbabilityBound out;
    const double spread = md * std::pow(nd, 0.5 + eps) + nd * std::pow(md, 0.5 + eps);
    out.N = static_cast<std::int64_t>(std::floor(c / l * spread));
    const double big_n = static_cast<double>(out.N);
    const double ln2 = std::log(2.0);
    out.log_large_pairs = -l * big_n * big_n / (3.0 * md * nd) + (md + nd + 1.0) * ln2;
    out.log_small_pairs = -l * big_n / 3.0 + (md + nd) * ln2;
    out.large_pairs = std::exp(out.log_large_pairs);
    out.small_pairs = std::exp(out.log_small_pairs);
    out.total = out.large_pairs + out.small_pairs;
    out.as_probability = std::clamp(out.total, 0.0, 1.0);
    return out;
}

} // namespace defset
