#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "defset/error.hpp"
#include "defset/io.hpp"
#include "experiments.hpp"

namespace {

using defset::cli::ExperimentConfig;

struct RawOptions {
    std::string margins;
    std::string family = "lambda-k2k";
    std::string format = "csv";
    std::string out;
};

defset::MarginSpec load_margins(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return defset::margins_from_json(arg);
    std::ifstream in(arg);
    if (!in) throw defset::Error(defset::Errc::parse, "cannot read margins file '" + arg + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return defset::margins_from_json(buf.str());
}

void add_common(CLI::App* sub, ExperimentConfig& cfg, RawOptions& raw) {
    sub->add_option("--seed", cfg.seed, "Base RNG seed (sample i uses seed + i)");
    sub->add_option("--samples", cfg.samples, "Number of sampled matrices");
    sub->add_option("--margins", raw.margins, "Margins as JSON {\"s\":[...],\"t\":[...]} or a path to such a file");
    sub->add_option("--family", raw.family, "Matrix family")->check(CLI::IsMember({"lambda-k2k", "custom"}));
    sub->add_option("--k", cfg.k, "k for the lambda-k2k family (2k x 2k, row/column sums k)");
    sub->add_option("--eps", cfg.eps, "Exponent slack epsilon");
    sub->add_option("--c", cfg.c, "Constant c of the deviation threshold");
    sub->add_option("--out", raw.out, "Write output to this file instead of stdout");
    sub->add_option("--format", raw.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--cap-factorial", cfg.cap_factorial, "Largest column-order count for the exact sds search");
    sub->add_option("--cap-class", cfg.cap_class, "Largest class size for exact uniform sampling");
    sub->add_option("--trials", cfg.trials, "Random subset pairs for sampled discrepancy (0 = exact)");
    sub->add_option("--burnin", cfg.burnin, "Switch-chain burn-in steps (default 20 mn ceil(ln mn))");
    sub->add_option("--thin", cfg.thin, "Switch-chain steps between samples (default mn)");
    sub->add_option("--chains", cfg.chains, "Independent switch chains (default: one per sample)");
    sub->add_option("--sampler", cfg.sampler, "Sampler")->check(CLI::IsMember({"auto", "exact", "chain"}));
    sub->add_option("--threads", cfg.threads, "Worker threads");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Defining sets of fixed-margin binary matrices: desk-scale experiments"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    RawOptions raw;
    const std::pair<const char*, const char*> commands[] = {
        {"sds", "Sample matrices and compute smallest defining sets"},
        {"count", "Exact class size against the leading-term estimate"},
        {"discrepancy", "Maximum subarray discrepancy against the deviation threshold"},
        {"critical", "Minimalize full matrices to critical sets and check their complements"},
        {"verify", "Run every brute-force oracle cross-check"},
        {"bounds", "Hypothesis report and probability bounds"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, cfg, raw);
        if (std::string(name) == "verify") sub->add_option("--max-dim", cfg.max_dim, "Largest dimension checked");
        if (std::string(name) == "bounds") {
            sub->add_option("--c-row", cfg.c_row, "Row regularity constant");
            sub->add_option("--c-col", cfg.c_col, "Column regularity constant");
            sub->add_option("--lambda-min", cfg.lambda_min, "Smallest admissible density");
        }
        sub->callback([&cfg, name = std::string(name)] { cfg.experiment = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : defset::cli::exit_bad_input;
    }

    try {
        cfg.family = raw.family == "custom" ? defset::cli::Family::custom : defset::cli::Family::lambda_k2k;
        cfg.format = raw.format == "json" ? defset::cli::Format::json : defset::cli::Format::csv;
        if (!raw.margins.empty()) {
            cfg.margins = load_margins(raw.margins);
            cfg.family = defset::cli::Family::custom;
        }

        const auto result = defset::cli::run_experiment(cfg);
        if (raw.out.empty()) {
            std::cout << result.text;
        } else {
            std::ofstream out(raw.out, std::ios::binary);
            if (!out) throw defset::Error(defset::Errc::parse, "cannot write '" + raw.out + "'");
            out << result.text;
        }
        if (result.exit_code == defset::cli::exit_verification_failed) {
            std::cerr << "defset: verification failed\n";
        }
        return result.exit_code;
    } catch (const defset::Error& e) {
        std::cerr << "defset: " << defset::to_string(e.code()) << ": " << e.what() << "\n";
        return defset::cli::exit_bad_input;
    }
}
