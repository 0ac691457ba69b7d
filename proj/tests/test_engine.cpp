#include <gtest/gtest.h>

#include <sstream>

#include "oracle.hpp"
#include "stratclass/engine.hpp"
#include "stratclass/kernels.hpp"

using namespace stratclass;

namespace {

std::vector<Agent> agents(std::initializer_list<std::pair<NodeId, Label>> xs) {
    std::vector<Agent> out;
    for (const auto& [u, y] : xs) out.push_back({u, y, std::nullopt});
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

TEST(Engine, OptOracleExample) {
    const auto g = star_graph(3);
    const auto hc = star_family(3);
    const auto seq = agents({{1, Label::Positive}, {2, Label::Negative}, {0, Label::Positive}});
    const auto r = opt_oracle(g, Protocol::deterministic(), hc, seq);
    EXPECT_EQ(r.losses, (std::vector<double>{0, 2, 1}));
    EXPECT_EQ(r.opt, 0.0);
    const auto empty = opt_oracle(g, Protocol::deterministic(), hc, {});
    EXPECT_EQ(empty.losses, (std::vector<double>(3, 0.0)));
    EXPECT_EQ(empty.opt, 0.0);
}

TEST(Engine, OptOracleMatchesBruteForce) {
    kernels::set_thread_count(4);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_graph({9, 0.25, 0.2, 1.0, 0}, seed);
        const auto cost = oracle::floyd(g);
        const auto hc = random_family(9, 300, 0.3, seed);
        const auto seq = random_agnostic_sequence(g, CostModel::ShortestPath, hc[0], 80, seed, 0.2);
        const auto par = opt_oracle(g, Protocol::deterministic(), hc, seq);
        const auto ser = opt_oracle_serial(g, Protocol::deterministic(), hc, seq);
        EXPECT_EQ(par.losses, ser.losses);
        EXPECT_EQ(par.opt, ser.opt);
        for (std::size_t h = 0; h < hc.size(); ++h) {
            int loss = 0;
            for (const auto& a : seq) loss += oracle::strategic_loss(cost, hc[h], a.u, a.y);
            EXPECT_EQ(par.losses[h], loss);
        }
    }
    kernels::set_thread_count(0);
}

TEST(Engine, OptOracleTwoPopulation) {
    const auto g = star_graph(4);
    const auto hop = oracle::hops(g);
    const auto hc = full_family(5, 64);
    std::vector<Agent> seq;
    std::mt19937_64 rng(1);
    for (int i = 0; i < 60; ++i) {
        seq.push_back({static_cast<NodeId>(rng() % 5), rng() % 2 ? Label::Positive : Label::Negative,
                       rng() % 2 ? Group::A : Group::B});
    }
    const auto r = opt_oracle(g, Protocol::two_population(0.5), hc, seq);
    EXPECT_EQ(r.losses, opt_oracle_serial(g, Protocol::two_population(0.5), hc, seq).losses);
    for (std::size_t h = 0; h < hc.size(); ++h) {
        int loss = 0;
        for (const auto& a : seq) loss += oracle::strategic_loss(hop, hc[h], a.u, a.y, *a.group == Group::A ? 0.5 : 1.0);
        EXPECT_EQ(r.losses[h], loss);
    }
    seq[0].group.reset();
    EXPECT_THROW(opt_oracle(g, Protocol::two_population(0.5), hc, seq), EngineError);
}

TEST(Engine, ProtocolErrors) {
    const auto g = star_graph(3);
    const auto hc = star_family(3);
    auto det = make_biased_weighted_majority(g, hc);
    auto adv = make_fixed(agents({{0, Label::Positive}}));
    EXPECT_THROW(run(Protocol::randomized(), g, hc, *det, *adv, 1, 0), EngineError);
    EXPECT_THROW(run(Protocol::deterministic(), g, hc, *det, *adv, 0, 0), EngineError);
    auto frac = make_constant_fraction(4, 0.5);
    EXPECT_THROW(run(Protocol::fractional(CostModel::UnitEdge), g, hc, *frac, *adv, 1, 0), EngineError);
}

TEST(Engine, ProtocolNames) {
    EXPECT_EQ(Protocol::deterministic().name(), "deterministic");
    EXPECT_EQ(Protocol::randomized().expected_shape(), CommitmentShape::Mixed);
    EXPECT_EQ(Protocol::fractional(CostModel::FreeEdge).expected_shape(), CommitmentShape::Fractional);
    EXPECT_EQ(Protocol::two_population(0.3).expected_shape(), CommitmentShape::Deterministic);
}

namespace {

// Always commits the same mixed strategy.
class FixedMix : public Learner {
  public:
    FixedMix(std::vector<DeterministicClassifier> support, std::vector<double> p)
        : mix_{std::make_shared<const std::vector<DeterministicClassifier>>(std::move(support)), std::move(p)} {}
    std::string name() const override { return "fixed-mix"; }
    CommitmentShape shape() const override { return CommitmentShape::Mixed; }
    Commitment commit() override { return mix_; }
    void observe(const Feedback& f) override { seen.push_back(f); }
    std::vector<Feedback> seen;

  private:
    MixedStrategy mix_;
};

}  // namespace

TEST(Engine, RandomizedPointMassIsTruthful) {
    const auto g = star_graph(4);
    const auto hc = star_family(4);
    FixedMix learner({star_family(4)[0], all_positive(5)}, {0.0, 1.0});
    auto adv = make_fixed(star_mixture_sequence(4, 50, 1));
    const auto t = run(Protocol::randomized(), g, hc, learner, *adv, 50, 1);
    for (const auto& r : t.records) {
        EXPECT_EQ(r.v, r.u);
        EXPECT_EQ(r.realized, 1u);
        EXPECT_EQ(r.loss, r.y == Label::Negative ? 1.0 : 0.0);
    }
    for (const auto& f : learner.seen) EXPECT_EQ(f.realized_index, 1u);
}

TEST(Engine, RandomizedDrawFrequencies) {
    const auto g = star_graph(2);
    const auto hc = star_family(2);
    FixedMix learner({all_negative(3), all_positive(3)}, {0.25, 0.75});
    std::vector<Agent> seq(4000, Agent{0, Label::Positive, std::nullopt});
    auto adv = make_fixed(seq);
    const auto t = run(Protocol::randomized(), g, hc, learner, *adv, 4000, 8);
    std::size_t positive = 0;
    for (const auto& r : t.records) positive += r.realized == 1u;
    EXPECT_NEAR(positive / 4000.0, 0.75, 0.03);
}

TEST(Engine, FractionalLossIsExpectation) {
    const auto g = star_graph(3);
    const auto hc = star_family(3);
    auto learner = make_constant_fraction(4, 0.3);
    auto adv = make_fixed(agents({{1, Label::Positive}, {2, Label::Negative}}));
    const auto t = run(Protocol::fractional(CostModel::FreeEdge), g, hc, *learner, *adv, 2, 0);
    EXPECT_DOUBLE_EQ(t.records[0].loss, 0.7);
    EXPECT_DOUBLE_EQ(t.records[1].loss, 0.3);
    EXPECT_DOUBLE_EQ(t.cumulative_loss(), 1.0);
    EXPECT_EQ(t.mistakes(), 2u);
}

TEST(Engine, RegretAndRecords) {
    const auto g = star_graph(3);
    const auto hc = star_family(3);
    BiasedMajority learner(g, hc);
    auto adv = make_fixed(agents({{1, Label::Positive}, {2, Label::Negative}, {0, Label::Positive}}));
    const auto t = run(Protocol::deterministic(), g, hc, learner, *adv, 3, 0);
    ASSERT_EQ(t.records.size(), 3u);
    double cum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(t.records[i].t, i);
        cum += t.records[i].loss;
        EXPECT_EQ(t.records[i].cum_loss, cum);
    }
    EXPECT_EQ(t.opt, 0.0);
    EXPECT_EQ(regret(t), t.cumulative_loss());
    EXPECT_EQ(t.agents.size(), 3u);
}

TEST(Engine, NatureGroupsFromNamedStream) {
    const auto g = star_graph(4);
    const auto hc = star_family(4);
    const std::uint64_t seed = 77;
    auto learner = make_two_pop_weighted_majority(g, hc, 0.4);
    auto adv = make_fixed(star_mixture_sequence(4, 500, 1));
    const auto t = run(Protocol::two_population(0.4), g, hc, *learner, *adv, 500, seed);
    auto nature = make_rng(seed, "nature");
    std::size_t b = 0;
    for (const auto& r : t.records) {
        const Group expected = uniform_real(nature) < 0.4 ? Group::B : Group::A;
        EXPECT_EQ(r.group, expected);
        b += expected == Group::B;
    }
    EXPECT_NEAR(b / 500.0, 0.4, 0.07);
}

TEST(Engine, StatSummary) {
    const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    const auto s = summarize(xs);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.stddev, 1.2909944487358056, 1e-15);
    EXPECT_NEAR(s.half_width, 1.96 * 1.2909944487358056 / 2.0, 1e-15);
    const std::vector<double> one{5.0};
    EXPECT_EQ(summarize(one).stddev, 0.0);
}

namespace {

Transcript sample_run(std::uint64_t seed) {
    static const auto g = star_graph(5);
    static const auto hc = star_family(5);
    BlockReduction learner(g, hc, 200, 0, 0.0, derive_seed(seed, "probe-schedule"));
    auto adv = make_fixed(star_mixture_sequence(5, 200, derive_seed(seed, "stream")));
    return run(Protocol::randomized(), g, hc, learner, *adv, 200, seed);
}

}  // namespace

TEST(Engine, MonteCarloSingleRepetition) {
    const auto mc = monte_carlo(sample_run, 1, 123);
    const auto single = sample_run(repetition_seed(123, 0));
    ASSERT_EQ(mc.transcripts.size(), 1u);
    EXPECT_EQ(transcript_csv(mc.transcripts[0]), transcript_csv(single));
    EXPECT_EQ(mc.summary.cumulative_loss.mean, single.cumulative_loss());
    EXPECT_EQ(mc.summary.regret.mean, regret(single));
}

TEST(Engine, MonteCarloDeterministicAcrossThreads) {
    kernels::set_thread_count(1);
    const auto a = monte_carlo(sample_run, 6, 9);
    kernels::set_thread_count(4);
    const auto b = monte_carlo(sample_run, 6, 9);
    kernels::set_thread_count(0);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(transcript_csv(a.transcripts[i], i), transcript_csv(b.transcripts[i], i));
    EXPECT_EQ(a.summary.cumulative_loss.mean, b.summary.cumulative_loss.mean);
    EXPECT_EQ(a.summary.regret.stddev, b.summary.regret.stddev);
}

TEST(Engine, MonteCarloPropagatesErrors) {
    auto bad = [](std::uint64_t) -> Transcript { throw EngineError("boom"); };
    EXPECT_THROW(monte_carlo(bad, 3, 1), EngineError);
}

TEST(Engine, CsvSchemaAndReaggregation) {
    std::ostringstream header;
    write_csv_header(header);
    EXPECT_EQ(header.str(), "run_id,t,learner,adversary,protocol,u,v,y,group,realized,loss,cum_loss\n");
    const auto mc = monte_carlo(sample_run, 4, 5);
    std::vector<double> finals;
    for (std::size_t i = 0; i < mc.transcripts.size(); ++i) {
        std::istringstream rows(transcript_csv(mc.transcripts[i], i));
        std::string line;
        double last = 0.0;
        std::size_t count = 0;
        std::getline(rows, line);  // header
        while (std::getline(rows, line)) {
            const auto cells = split(line);
            ASSERT_EQ(cells.size(), 12u) << line;
            EXPECT_EQ(cells[0], std::to_string(i));
            last = std::stod(cells[11]);
            ++count;
        }
        EXPECT_EQ(count, 200u);
        finals.push_back(last);
    }
    EXPECT_EQ(summarize(finals).mean, mc.summary.cumulative_loss.mean);
}

TEST(Engine, NumberFormatting) {
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(3.0), "3");
    EXPECT_EQ(std::stod(format_number(0.1 + 0.2)), 0.1 + 0.2);
}
