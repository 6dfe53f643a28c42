#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "defset/margins.hpp"

namespace defset {

enum class ChernoffVariant {
    upper,    ///< P(X >= (1+g) mu) <= exp(-g^2 mu / (2+g)),  g > 0
    twosided, ///< P(|X - mu| >= g mu) <= 2 exp(-mu g^2 / 3), 0 < g < 1
};

/// Throws Errc::domain outside the variant's range of gamma, or for mu < 0.
double chernoff_bound(double gamma, double mu, ChernoffVariant variant);

struct HypothesisCheck {
    std::string name;
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct HypothesisParams {
    double eps = 0.1;
    double c_row = 1.0;
    double c_col = 1.0;
    double lambda_min = 0.0;
};

struct HypothesisReport {
    std::vector<HypothesisCheck> checks;
    /// Base of the logarithm in the balance condition.
    std::string log_base = "e";

    bool overall() const noexcept;
    const HypothesisCheck* find(const std::string& name) const noexcept;
};

/// (1-2 lambda)^2 / (4 lambda (1-lambda)) * (1 + 5m/(6n) + 5n/(6m)).
double balance_lhs(std::size_t m, std::size_t n, double lambda);
/// Same with lambda = E/(mn) exact; the numerator is computed in integers so
/// lambda = 1/2 yields exactly 0.
double balance_lhs(std::size_t m, std::size_t n, Rational lambda);

/// Evaluates: n <= m, equal totals, lambda <= 1/2, lambda >= lambda_min,
/// row and column regularity with explicit constants, and the balance
/// condition against (ln m)/3. Failures are reported, never thrown.
HypothesisReport check_hypotheses(const MarginSpec& margins, const HypothesisParams& params);

/// Union-bound estimate of the probability that some subset pair deviates by
/// more than c (m n^{1/2+eps} + n m^{1/2+eps}) in the independent-edge model.
struct FailureProbabilityBound {
    std::int64_t N = 0;         ///< floor((c/lambda)(m n^{1/2+eps} + n m^{1/2+eps}))
    double log_large_pairs = 0; ///< -lambda N^2 / (3mn) + (m+n+1) ln 2
    double log_small_pairs = 0; ///< -lambda N / 3 + (m+n) ln 2
    double large_pairs = 0;
    double small_pairs = 0;
    double total = 0;           ///< raw sum, may exceed 1
    double as_probability = 0;  ///< total clipped to [0, 1]
};

/// Throws Errc::domain unless c > 0 and 0 < lambda <= 1/2.
FailureProbabilityBound failure_probability_bound(std::size_t m, std::size_t n, Rational lambda, double c,
                                                  double eps);

} // namespace defset
