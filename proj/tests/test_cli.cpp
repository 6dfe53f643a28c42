#include <gtest/gtest.h>

#include <sstream>

#include "defset/error.hpp"
#include "experiments.hpp"

namespace defset::cli {
namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return k;
    ADD_FAILURE() << "missing column " << name;
    return 0;
}

TEST(ExactRatio, Formatting) {
    EXPECT_EQ(exact_ratio(1, 2), "0.500000000000");
    EXPECT_EQ(exact_ratio(2, 3), "0.666666666667");
    EXPECT_EQ(exact_ratio(1, 3), "0.333333333333");
    EXPECT_EQ(exact_ratio(8, 8), "1.000000000000");
    EXPECT_EQ(exact_ratio(0, 7), "0.000000000000");
    EXPECT_EQ(exact_ratio(18446744073709551615ULL, 1), "18446744073709551615.000000000000");
    EXPECT_THROW(exact_ratio(1, 0), Error);
}

TEST(SdsExperiment, RowsRespectTrivialBoundAndRatio) {
    ExperimentConfig cfg;
    cfg.experiment = "sds";
    cfg.k = 2;
    cfg.samples = 20;
    cfg.seed = 7;
    const auto out = run_experiment(cfg);
    EXPECT_EQ(out.exit_code, exit_ok);
    const auto rows = csv_rows(out.text);
    ASSERT_EQ(rows.size(), 21u);
    const auto& h = rows[0];
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto sds = std::stoull(rows[r][column(h, "sds")]);
        const auto e = std::stoull(rows[r][column(h, "lambda_mn")]);
        EXPECT_LE(sds, 8u);
        EXPECT_EQ(e, 8u);
        EXPECT_EQ(rows[r][column(h, "ratio")], exact_ratio(sds, e));
        EXPECT_EQ(rows[r][column(h, "exact")], "true");
        EXPECT_LE(std::stoll(rows[r][column(h, "certificate")]), static_cast<long long>(sds));
    }
}

TEST(SdsExperiment, MetadataRecordsConfigAndRng) {
    ExperimentConfig cfg;
    cfg.experiment = "sds";
    cfg.samples = 2;
    cfg.seed = 3;
    const auto text = run_experiment(cfg).text;
    ASSERT_EQ(text.rfind("# {", 0), 0u);
    const auto meta = text.substr(0, text.find('\n'));
    EXPECT_NE(meta.find(R"("rng":"splitmix64")"), std::string::npos);
    EXPECT_NE(meta.find(R"("seed":3)"), std::string::npos);
    EXPECT_NE(meta.find(R"("samples":2)"), std::string::npos);
}

TEST(Replay, ByteIdenticalAndThreadIndependent) {
    for (const char* exp : {"sds", "discrepancy", "critical", "count", "bounds"}) {
        ExperimentConfig cfg;
        cfg.experiment = exp;
        cfg.k = 2;
        cfg.samples = 6;
        cfg.seed = 42;
        const auto a = run_experiment(cfg);
        const auto b = run_experiment(cfg);
        EXPECT_EQ(a.text, b.text) << exp;
        cfg.threads = 4;
        EXPECT_EQ(run_experiment(cfg).text, a.text) << exp;
        cfg.format = Format::json;
        EXPECT_EQ(run_experiment(cfg).text, run_experiment(cfg).text) << exp;
    }
}

TEST(CountExperiment, PermutationClass) {
    ExperimentConfig cfg;
    cfg.experiment = "count";
    cfg.family = Family::custom;
    cfg.margins = MarginSpec{{1, 1, 1}, {1, 1, 1}};
    cfg.format = Format::json;
    const auto out = run_experiment(cfg);
    EXPECT_EQ(out.exit_code, exit_ok);
    EXPECT_NE(out.text.find(R"("exact": "6")"), std::string::npos);
}

TEST(VerifyExperiment, PassesAtDimThree) {
    ExperimentConfig cfg;
    cfg.experiment = "verify";
    cfg.max_dim = 3;
    const auto out = run_experiment(cfg);
    EXPECT_EQ(out.exit_code, exit_ok);
    EXPECT_NE(out.text.find("all oracle suites passed"), std::string::npos);
}

TEST(CriticalExperiment, AllComplementsDefining) {
    ExperimentConfig cfg;
    cfg.experiment = "critical";
    cfg.k = 2;
    cfg.samples = 10;
    const auto out = run_experiment(cfg);
    EXPECT_EQ(out.exit_code, exit_ok);
    const auto rows = csv_rows(out.text);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        EXPECT_EQ(rows[r][column(rows[0], "is_critical")], "true");
        EXPECT_EQ(rows[r][column(rows[0], "complement_defining")], "true");
    }
}

TEST(DiscrepancyExperiment, BelowThresholdAtSmallScale) {
    ExperimentConfig cfg;
    cfg.experiment = "discrepancy";
    cfg.k = 3;
    cfg.samples = 5;
    cfg.format = Format::json;
    const auto out = run_experiment(cfg);
    EXPECT_NE(out.text.find(R"("exceeding_threshold": 0)"), std::string::npos);
}

TEST(BadInput, Throws) {
    ExperimentConfig cfg;
    cfg.experiment = "count";
    cfg.family = Family::custom;
    EXPECT_THROW(run_experiment(cfg), Error);
    cfg.margins = MarginSpec{{2, 2}, {2, 1}};
    EXPECT_THROW(run_experiment(cfg), Error);
    cfg.experiment = "nonsense";
    cfg.margins = MarginSpec{{1}, {1}};
    EXPECT_THROW(run_experiment(cfg), Error);
    ExperimentConfig zero;
    zero.experiment = "sds";
    zero.k = 0;
    EXPECT_THROW(run_experiment(zero), Error);
}

} // namespace
} // namespace defset::cli
