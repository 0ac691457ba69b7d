#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stratclass/experiment.hpp"

using namespace stratclass;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

const char* kBase =
    "protocol = deterministic\n"
    "graph = star:4\n"
    "learner = biased-majority\n"
    "adversary = det-lower-bound\n"
    "T = 30\n";

}  // namespace

TEST(Config, ParsesKeysAndComments) {
    const auto cfg = parse(std::string("# comment\n") + kBase + "seed = 5   # trailing\nname = demo\n");
    EXPECT_EQ(cfg.graph, "star:4");
    EXPECT_EQ(cfg.rounds, 30u);
    EXPECT_EQ(cfg.seed, 5u);
    EXPECT_EQ(cfg.name, "demo");
    EXPECT_NO_THROW(validate(cfg));
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse(std::string(kBase) + "colour = red\n"), ConfigError);
    EXPECT_THROW(parse(std::string(kBase) + "T = 40\n"), ConfigError);
    EXPECT_THROW(parse("T = -1\n"), ConfigError);
    EXPECT_THROW(parse("T = 1.5\n"), ConfigError);
    EXPECT_THROW(parse("protocol = quantum\n"), ConfigError);
    EXPECT_THROW(parse("learner = oracle\n"), ConfigError);
    EXPECT_THROW(parse("no equals sign\n"), ConfigError);
    EXPECT_THROW(load_config("/definitely/missing.ini"), ConfigError);
}

TEST(Config, CrossFieldValidation) {
    auto cfg = parse(kBase);
    cfg.learner = "exp3";
    EXPECT_THROW(validate(cfg), ConfigError);  // mixed learner, deterministic protocol
    cfg = parse(kBase);
    cfg.protocol = "two-pop";
    EXPECT_THROW(validate(cfg), ConfigError);  // beta missing
    cfg.beta = 1.5;
    EXPECT_THROW(validate(cfg), ConfigError);
    cfg = parse(kBase);
    cfg.adversary = "fixed";
    EXPECT_THROW(validate(cfg), ConfigError);  // no sequence
    cfg = parse(kBase);
    cfg.rounds = 0;
    EXPECT_THROW(validate(cfg), ConfigError);
    cfg = parse(kBase);
    cfg.protocol = "fractional";
    cfg.learner = "constant-fraction";
    cfg.adversary = "frac-free-edge";
    cfg.cost_model = "unit-edge";
    EXPECT_THROW(validate(cfg), ConfigError);
    cfg.cost_model = "free-edge";
    EXPECT_NO_THROW(validate(cfg));
}

TEST(Config, PrepareMapsErrors) {
    auto cfg = parse(kBase);
    cfg.graph = "hexagon:3";
    EXPECT_THROW(prepare(cfg), ConfigError);
    cfg = parse(kBase);
    cfg.hypotheses = "full:4";
    EXPECT_THROW(prepare(cfg), ConfigError);
}

TEST(Config, RelativeSequencePath) {
    const fs::path dir = fs::temp_directory_path() / "stratclass_cfg_test";
    fs::create_directories(dir);
    std::ofstream(dir / "agents.seq") << "0 1\n2 -1\n";
    std::ofstream(dir / "run.ini") << "protocol = deterministic\ngraph = star:3\nlearner = vanilla-halving\n"
                                      "adversary = fixed\nsequence = agents.seq\nT = 5\n";
    const auto ex = prepare(load_config((dir / "run.ini").string()));
    ASSERT_EQ(ex.fixed_sequence.size(), 2u);
    EXPECT_EQ(ex.fixed_sequence[1].u, 2u);
    EXPECT_EQ(ex.fixed_sequence[1].y, Label::Negative);
    const auto t = run_once(ex, 1);
    EXPECT_EQ(t.records.size(), 5u);
    EXPECT_EQ(t.agents[2].u, 0u);  // cycled
    fs::remove_all(dir);
}

TEST(Config, RunExperimentSummary) {
    auto cfg = parse(std::string(kBase) + "repetitions = 3\nseed = 2\n");
    const auto ex = prepare(cfg);
    const auto result = run_experiment(ex);
    EXPECT_EQ(result.transcripts.size(), 3u);
    EXPECT_EQ(result.summary.cumulative_loss.mean, 30.0);
    std::ostringstream out;
    write_summary(out, ex, result.summary);
    EXPECT_NE(out.str().find("mean_cum_loss = 30"), std::string::npos) << out.str();
}

TEST(Config, WeightedGraphExpandsForLearner) {
    auto cfg = parse(kBase);
    cfg.graph = "path:4:0.4";
    cfg.hypotheses = "full:16";
    cfg.adversary = "greedy-realizable";
    const auto ex = prepare(cfg);
    EXPECT_TRUE(ex.learner_graph->unit_cost());
    EXPECT_FALSE(ex.graph->unit_cost());
}

TEST(Config, NameLists) {
    EXPECT_EQ(learner_names().size(), 12u);
    EXPECT_EQ(adversary_names().size(), 9u);
}
