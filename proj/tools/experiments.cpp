#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "defset/bounds.hpp"
#include "defset/counting.hpp"
#include "defset/defining.hpp"
#include "defset/discrepancy.hpp"
#include "defset/error.hpp"
#include "defset/io.hpp"
#include "defset/rng.hpp"
#include "defset/sampling.hpp"
#include "oracles.hpp"

namespace defset::cli {

namespace {

using nlohmann::ordered_json;

std::string fixed(double value, int digits) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

std::string scientific(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", value);
    return buf;
}

const char* family_name(Family f) { return f == Family::lambda_k2k ? "lambda-k2k" : "custom"; }

// Runs fn(i) for i in [0, count) on `threads` workers; fn writes only to slot i.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct Draw {
    BinaryMatrix matrix;
    std::uint64_t seed;
    std::string sampler;
};

ChainConfig chain_config(const ExperimentConfig& config, std::size_t m, std::size_t n, std::uint64_t seed) {
    ChainConfig cfg = ChainConfig::defaults(m, n, seed);
    if (config.burnin) cfg.burnin = *config.burnin;
    if (config.thin) cfg.thin = *config.thin;
    if (cfg.thin == 0) throw Error(Errc::domain, "--thin must be at least 1");
    return cfg;
}

std::vector<Draw> draw_samples(const ExperimentConfig& config, const MarginSpec& margins,
                               const std::string& default_sampler) {
    MarginClass cls(margins);
    if (cls.size() == 0) throw Error(Errc::empty_class, "margins admit no matrix");
    std::string sampler = config.sampler == "auto" ? default_sampler : config.sampler;
    if (sampler == "auto") sampler = cls.size() <= config.cap_class ? "exact" : "chain";
    if (sampler != "exact" && sampler != "chain") throw Error(Errc::parse, "unknown sampler '" + sampler + "'");
    if (sampler == "exact" && cls.size() > config.cap_class) {
        throw Error(Errc::cap_exceeded, "class exceeds --cap-class for exact sampling");
    }

    std::vector<Draw> out;
    out.reserve(config.samples);
    if (sampler == "exact") {
        for (std::size_t i = 0; i < config.samples; ++i) {
            SplitMix64 rng(config.seed + i);
            out.push_back({sample_uniform_exact(cls, rng), config.seed + i, "exact-uniform"});
        }
        return out;
    }

    const BinaryMatrix start = config.family == Family::lambda_k2k ? circulant_regular(2 * config.k, config.k)
                                                                     : cls.unrank(0);
    const std::size_t chains = std::max<std::size_t>(1, config.chains.value_or(config.samples));
    std::vector<std::vector<BinaryMatrix>> per_chain(chains);
    parallel_for(chains, config.threads, [&](std::size_t c) {
        std::size_t count = 0;
        for (std::size_t i = c; i < config.samples; i += chains) ++count;
        per_chain[c] = switch_chain_samples(start, chain_config(config, margins.m(), margins.n(), config.seed + c), count);
    });
    for (std::size_t i = 0; i < config.samples; ++i) {
        out.push_back({per_chain[i % chains][i / chains], config.seed + i % chains, "switch-chain"});
    }
    return out;
}

ordered_json metadata(const ExperimentConfig& config, const MarginSpec* margins) {
    ordered_json meta;
    meta["experiment"] = config.experiment;
    meta["family"] = family_name(config.family);
    if (config.family == Family::lambda_k2k) meta["k"] = config.k;
    if (margins) meta["margins"] = ordered_json{{"s", margins->s}, {"t", margins->t}};
    meta["samples"] = config.samples;
    meta["seed"] = config.seed;
    meta["rng"] = std::string(SplitMix64::algorithm);
    meta["sampler"] = config.sampler;
    meta["burnin"] = config.burnin ? ordered_json(*config.burnin) : ordered_json("default:20*mn*ceil(ln mn)");
    meta["thin"] = config.thin ? ordered_json(*config.thin) : ordered_json("default:mn");
    meta["chains"] = config.chains ? ordered_json(*config.chains) : ordered_json("default:samples");
    meta["eps"] = config.eps;
    meta["c"] = config.c;
    meta["cap_factorial"] = config.cap_factorial;
    meta["cap_class"] = config.cap_class;
    meta["trials"] = config.trials;
    return meta;
}

// Table with a metadata header; renders as CSV (leading "# " JSON line) or JSON.
struct Table {
    ordered_json meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    ordered_json extra = ordered_json::object();

    std::string render(Format format) const {
        if (format == Format::json) {
            ordered_json doc;
            doc["meta"] = meta;
            for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
            ordered_json list = ordered_json::array();
            for (const auto& row : rows) {
                ordered_json rec;
                for (std::size_t k = 0; k < columns.size(); ++k) rec[columns[k]] = row[k];
                list.push_back(std::move(rec));
            }
            doc["rows"] = std::move(list);
            return doc.dump(2) + "\n";
        }
        std::string out = "# " + meta.dump() + "\n";
        for (std::size_t k = 0; k < columns.size(); ++k) out += (k ? "," : "") + columns[k];
        out += "\n";
        for (const auto& row : rows) {
            for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + row[k];
            out += "\n";
        }
        return out;
    }
};

std::int64_t certificate_for(const BinaryMatrix& m) {
    if (std::min(m.rows(), m.cols()) > max_exact_discrepancy_side) return 0;
    const std::size_t ones = m.count_ones();
    if (ones == 0 || ones == m.cells()) return 0;
    const BinaryMatrix base = 2 * ones > m.cells() ? complement(m) : m;
    const auto disc = max_discrepancy_exact(base);
    CertificateInput input{base.rows(), base.cols(), margins_of(base).density(), disc.value.magnitude()};
    return walk_lower_bound_certificate(input);
}

ExperimentOutput run_sds(const ExperimentConfig& config) {
    const MarginSpec margins = experiment_margins(config);
    const auto draws = draw_samples(config, margins, "auto");
    std::vector<std::vector<std::string>> rows(draws.size());
    parallel_for(draws.size(), config.threads, [&](std::size_t i) {
        const BinaryMatrix& m = draws[i].matrix;
        const SdsResult r = sds_best_effort(m, config.cap_factorial, draws[i].seed);
        const auto e = static_cast<std::uint64_t>(m.count_ones());
        rows[i] = {std::to_string(i),
                   std::to_string(draws[i].seed),
                   std::to_string(m.rows()),
                   std::to_string(m.cols()),
                   config.family == Family::lambda_k2k ? std::to_string(config.k) : "",
                   std::to_string(r.value),
                   r.exact ? "true" : "false",
                   std::to_string(e),
                   e == 0 ? "nan" : exact_ratio(r.value, e),
                   std::to_string(trivial_defining_bound(m)),
                   std::to_string(certificate_for(m)),
                   draws[i].sampler};
    });
    Table t{metadata(config, &margins),
            {"sample", "seed", "m", "n", "k", "sds", "exact", "lambda_mn", "ratio", "trivial_bound", "certificate",
             "sampler"},
            std::move(rows)};
    return {exit_ok, t.render(config.format)};
}

double log_bigint(const BigInt& v) {
    if (v <= 0) return -std::numeric_limits<double>::infinity();
    const std::size_t bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 60) return std::log(v.convert_to<double>());
    const std::size_t shift = bits - 60;
    const BigInt top = v >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

ExperimentOutput run_count(const ExperimentConfig& config) {
    const MarginSpec margins = experiment_margins(config);
    const BigInt exact = count_exact(margins);
    const CountEstimate est = estimate_count_leading(margins);
    const double ratio_log = log_bigint(exact) - est.log_value;
    const std::string note = "estimate omits an unknown multiplicative exp(-O((mn)^{2eps})) factor";
    if (config.format == Format::json) {
        ordered_json doc;
        doc["meta"] = metadata(config, &margins);
        doc["exact"] = exact.str();
        doc["log_estimate"] = est.log_value;
        doc["ratio_log"] = ratio_log;
        doc["ratio"] = std::exp(ratio_log);
        doc["degenerate"] = est.degenerate;
        doc["parts"] = ordered_json{{"log_inverse_global", est.log_inverse_global},
                                    {"log_row_product", est.log_row_product},
                                    {"log_col_product", est.log_col_product},
                                    {"entropy_term", est.entropy_term}};
        doc["note"] = note;
        return {exit_ok, doc.dump(2) + "\n"};
    }
    Table t{metadata(config, &margins),
            {"exact", "log_estimate", "ratio_log", "ratio", "degenerate"},
            {{exact.str(), scientific(est.log_value), scientific(ratio_log), scientific(std::exp(ratio_log)),
              est.degenerate ? "true" : "false"}}};
    return {exit_ok, t.render(config.format)};
}

ExperimentOutput run_discrepancy(const ExperimentConfig& config) {
    const MarginSpec margins = experiment_margins(config);
    const auto draws = draw_samples(config, margins, "chain");
    const double threshold = concentration_threshold(margins.m(), margins.n(), config.c, config.eps);
    std::vector<std::vector<std::string>> rows(draws.size());
    std::atomic<std::size_t> exceed{0};
    parallel_for(draws.size(), config.threads, [&](std::size_t i) {
        const BinaryMatrix& m = draws[i].matrix;
        const bool exact_mode =
            config.trials == 0 && std::min(m.rows(), m.cols()) <= max_exact_discrepancy_side;
        const auto best = exact_mode ? max_discrepancy_exact(m)
                                     : max_discrepancy_sampled(m, std::max<std::uint64_t>(config.trials, 1),
                                                               draws[i].seed);
        const double value = static_cast<double>(best.value.magnitude()) / static_cast<double>(best.value.denominator);
        if (value > threshold) ++exceed;
        rows[i] = {std::to_string(m.rows()),
                   std::to_string(m.cols()),
                   config.family == Family::lambda_k2k ? std::to_string(config.k) : "",
                   std::to_string(draws[i].seed),
                   std::to_string(i),
                   std::to_string(best.value.magnitude()),
                   std::to_string(best.value.denominator),
                   fixed(threshold, 6),
                   fixed(value / threshold, 12)};
    });
    Table t{metadata(config, &margins),
            {"m", "n", "k", "seed", "sample", "maxdelta_num", "maxdelta_den", "threshold", "ratio"},
            std::move(rows)};
    t.extra["exceeding_threshold"] = exceed.load();
    return {exit_ok, t.render(config.format)};
}

ExperimentOutput run_critical(const ExperimentConfig& config) {
    const MarginSpec margins = experiment_margins(config);
    const auto draws = draw_samples(config, margins, "auto");
    std::vector<std::vector<std::string>> rows(draws.size());
    std::atomic<std::size_t> failures{0};
    parallel_for(draws.size(), config.threads, [&](std::size_t i) {
        const BinaryMatrix& m = draws[i].matrix;
        const PartialMatrix critical = minimalize_to_critical(PartialMatrix(m), m);
        const bool critical_ok = is_critical(critical, m);
        const bool complement_ok = is_defining(difference(m, critical), m);
        if (!critical_ok || !complement_ok) ++failures;
        rows[i] = {std::to_string(i),
                   std::to_string(draws[i].seed),
                   std::to_string(m.rows()),
                   std::to_string(m.cols()),
                   std::to_string(critical.size()),
                   std::to_string(m.cells() - critical.size()),
                   critical_ok ? "true" : "false",
                   complement_ok ? "true" : "false"};
    });
    Table t{metadata(config, &margins),
            {"sample", "seed", "m", "n", "critical_size", "complement_size", "is_critical", "complement_defining"},
            std::move(rows)};
    return {failures == 0 ? exit_ok : exit_verification_failed, t.render(config.format)};
}

ExperimentOutput run_verify(const ExperimentConfig& config) {
    std::ostringstream log;
    const auto suites = oracle::run_verification_suites(config.max_dim, config.seed, log);
    const bool ok = std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.failures == 0; });
    if (config.format == Format::json) {
        ordered_json doc;
        doc["max_dim"] = config.max_dim;
        doc["seed"] = config.seed;
        doc["rng"] = std::string(SplitMix64::algorithm);
        ordered_json list = ordered_json::array();
        for (const auto& s : suites) list.push_back({{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}});
        doc["suites"] = std::move(list);
        doc["passed"] = ok;
        return {ok ? exit_ok : exit_verification_failed, doc.dump(2) + "\n"};
    }
    std::string text = log.str();
    text += ok ? "all oracle suites passed\n" : "oracle suites FAILED\n";
    return {ok ? exit_ok : exit_verification_failed, text};
}

ExperimentOutput run_bounds(const ExperimentConfig& config) {
    const MarginSpec margins = experiment_margins(config);
    const HypothesisReport report =
        check_hypotheses(margins, {config.eps, config.c_row, config.c_col, config.lambda_min});
    const Rational lambda = margins.density();
    std::optional<FailureProbabilityBound> failure;
    if (lambda.num > 0 && 2 * lambda.num <= lambda.den) {
        failure = failure_probability_bound(margins.m(), margins.n(), lambda, config.c, config.eps);
    }
    const double threshold = concentration_threshold(margins.m(), margins.n(), config.c, config.eps);

    if (config.format == Format::json) {
        ordered_json doc;
        doc["meta"] = metadata(config, &margins);
        doc["log_base"] = report.log_base;
        ordered_json checks = ordered_json::array();
        for (const auto& c : report.checks) {
            checks.push_back({{"name", c.name}, {"holds", c.holds}, {"lhs", c.lhs}, {"rhs", c.rhs}});
        }
        doc["hypotheses"] = std::move(checks);
        doc["overall"] = report.overall();
        doc["threshold"] = threshold;
        if (failure) {
            doc["failure_bound"] = ordered_json{{"N", failure->N},
                                                {"log_large_pairs", failure->log_large_pairs},
                                                {"log_small_pairs", failure->log_small_pairs},
                                                {"total", failure->total},
                                                {"as_probability", failure->as_probability}};
        } else {
            doc["failure_bound"] = nullptr;
        }
        return {exit_ok, doc.dump(2) + "\n"};
    }
    Table t{metadata(config, &margins), {"name", "holds", "lhs", "rhs"}, {}};
    for (const auto& c : report.checks) {
        t.rows.push_back({c.name, c.holds ? "true" : "false", scientific(c.lhs), scientific(c.rhs)});
    }
    t.rows.push_back({"overall", report.overall() ? "true" : "false", "", ""});
    t.rows.push_back({"threshold", "", scientific(threshold), ""});
    if (failure) {
        t.rows.push_back({"failure_N", "", std::to_string(failure->N), ""});
        t.rows.push_back({"failure_log_large_pairs", "", scientific(failure->log_large_pairs), ""});
        t.rows.push_back({"failure_log_small_pairs", "", scientific(failure->log_small_pairs), ""});
        t.rows.push_back({"failure_as_probability", "", scientific(failure->as_probability), ""});
    }
    return {exit_ok, t.render(config.format)};
}

} // namespace

MarginSpec experiment_margins(const ExperimentConfig& config) {
    if (config.family == Family::custom) {
        if (!config.margins) throw Error(Errc::parse, "--family custom needs --margins");
        config.margins->validate();
        return *config.margins;
    }
    if (config.k == 0) throw Error(Errc::out_of_range, "--k must be positive");
    return regular_margins(2 * config.k, static_cast<std::int64_t>(config.k));
}

std::string exact_ratio(std::uint64_t numerator, std::uint64_t denominator) {
    if (denominator == 0) throw Error(Errc::domain, "ratio with zero denominator");
    constexpr UInt128 scale = 1'000'000'000'000ULL;
    const UInt128 scaled = (static_cast<UInt128>(numerator) * scale * 2 + denominator) /
                                     (static_cast<UInt128>(denominator) * 2);
    const auto whole = static_cast<std::uint64_t>(scaled / scale);
    const auto frac = static_cast<std::uint64_t>(scaled % scale);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%llu.%012llu", static_cast<unsigned long long>(whole),
                  static_cast<unsigned long long>(frac));
    return buf;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
    if (config.experiment == "sds") return run_sds(config);
    if (config.experiment == "count") return run_count(config);
    if (config.experiment == "discrepancy") return run_discrepancy(config);
    if (config.experiment == "critical") return run_critical(config);
    if (config.experiment == "verify") return run_verify(config);
    if (config.experiment == "bounds") return run_bounds(config);
    throw Error(Errc::parse, "unknown experiment '" + config.experiment + "'");
}

} // namespace defset::cli
