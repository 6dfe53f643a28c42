#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "defset/margins.hpp"

namespace defset::cli {

enum class Family { lambda_k2k, custom };
enum class Format { csv, json };

struct ExperimentConfig {
    std::string experiment; // sds | count | discrepancy | critical | verify | bounds
    Family family = Family::lambda_k2k;
    std::size_t k = 2;
    std::optional<MarginSpec> margins; // required for Family::custom
    std::size_t samples = 10;
    std::uint64_t seed = 0;
    double eps = 0.1;
    double c = 1.0;
    std::uint64_t cap_factorial = 3'628'800;
    std::uint64_t cap_class = 1'000'000;
    std::uint64_t trials = 0; // > 0: sampled discrepancy with this many pairs
    std::optional<std::uint64_t> burnin;
    std::optional<std::uint64_t> thin;
    std::optional<std::size_t> chains;
    std::size_t max_dim = 3;
    std::size_t threads = 1;
    std::string sampler = "auto"; // auto | exact | chain
    Format format = Format::csv;
    // bounds
    double c_row = 1.0;
    double c_col = 1.0;
    double lambda_min = 0.0;
};

struct ExperimentOutput {
    int exit_code = 0;
    std::string text;
};

/// Exit codes: 0 success, 1 verification failure, 2 bad input.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_bad_input = 2;

/// Runs one experiment and renders its output. Deterministic for a given
/// config regardless of `threads`. Throws defset::Error on bad input.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Margins selected by the config (family or custom).
MarginSpec experiment_margins(const ExperimentConfig& config);

/// sds / E rounded half-up to 12 decimals, from exact integers.
std::string exact_ratio(std::uint64_t numerator, std::uint64_t denominator);

} // namespace defset::cli
