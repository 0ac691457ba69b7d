#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "stratclass/adversaries.hpp"
#include "stratclass/engine.hpp"
#include "stratclass/learners.hpp"

using namespace stratclass;

namespace {

DeterministicClassifier det(Learner& l) { return std::get<DeterministicClassifier>(l.commit()); }

double logical_total(const WeightState& s) {
    double total = 0.0;
    for (std::size_t h = 0; h < s.w.size(); ++h) total += s.logical(h);
    return total;
}

}  // namespace

TEST(Learners, VanillaHalvingStartsAllNegative) {
    const auto g = star_graph(5);
    const auto hc = star_family(5);
    auto l = make_vanilla_halving(g, hc);
    EXPECT_EQ(det(*l), all_negative(6));
}

TEST(Learners, BrHalvingStartsCenterPositive) {
    const auto g = star_graph(5);
    const auto hc = star_family(5);
    auto l = make_br_halving(g, hc);
    EXPECT_EQ(det(*l).to_string(), "+-----");
}

TEST(Learners, BiasedMajorityThreshold) {
    // Δ = 3, ten alive experts: a node needs 2 positive votes.
    const auto g = star_graph(3);
    std::vector<DeterministicClassifier> hs;
    for (int i = 0; i < 10; ++i) {
        std::string s = "----";
        if (i < 2) s[1] = '+';
        if (i == 2) s[2] = '+';
        if (i < 9) s[3] = '+';
        hs.push_back(DeterministicClassifier::parse(s));
    }
    const HypothesisClass hc(hs);
    BiasedMajority l(g, hc);
    EXPECT_EQ(l.degree(), 3);
    EXPECT_EQ(det(l).to_string(), "-+-+");
}

TEST(Learners, BiasedMajorityRealizableStar) {
    const auto g = star_graph(8);
    const auto hc = star_family(8);
    BiasedMajority learner(g, hc);
    auto adv = make_det_lower_bound_realizable(g);
    const auto t = run(Protocol::deterministic(), g, hc, learner, *adv, 60, 1);
    EXPECT_GE(t.mistakes(), 7u);
    EXPECT_LE(static_cast<double>(t.mistakes()), 10.0 * std::log(8.0));
    EXPECT_EQ(t.opt, 0.0);
    EXPECT_FALSE(learner.exhausted());
}

TEST(Learners, BiasedMajorityNeverRemovesTarget) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_graph({15, 0.15, 1.0, 1.0, 0}, seed);
        const auto hc = random_family(15, 60, 0.2, seed);
        const std::size_t target = seed % hc.size();
        BiasedMajority learner(g, hc);
        auto adv = make_fixed(random_realizable_sequence(g, CostModel::ShortestPath, hc[target], 200, seed));
        RunHooks hooks;
        hooks.after_round = [&](const RoundRecord&, const Learner& l) {
            EXPECT_TRUE(l.weight_state()->alive.test(target));
        };
        const auto t = run(Protocol::deterministic(), g, hc, learner, *adv, 200, seed, hooks);
        const int delta = g.degree_stats().max_degree;
        EXPECT_LE(static_cast<double>(t.mistakes()), (delta + 2) * std::log(60.0));
    }
}

TEST(Learners, DirectedUsesOutDegree) {
    const auto g = directed_star_graph(6, true);
    const auto hc = star_family(6);
    BiasedMajority l(g, hc);
    EXPECT_EQ(l.degree(), 1);
}

TEST(Learners, ImprovedOnCompleteGraph) {
    const auto g = complete_graph(20);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto hc = random_family(20, 200, 0.1, seed);
        auto learner = make_improved_biased_majority(g, hc);
        auto adv = make_greedy_realizable(g, hc);
        const auto t = run(Protocol::deterministic(), g, hc, *learner, *adv, 50, seed);
        EXPECT_LE(t.mistakes(), 1u);
        auto learner2 = make_improved_biased_majority(g, hc);
        auto adv2 = make_fixed(random_realizable_sequence(g, CostModel::ShortestPath, hc[7], 50, seed));
        EXPECT_LE(run(Protocol::deterministic(), g, hc, *learner2, *adv2, 50, seed).mistakes(), 1u);
    }
}

TEST(Learners, HalvingWithoutEdgesIsClassical) {
    const ManipulationGraph g(6, false, {});
    const auto hc = full_family(6, 64);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto learner = make_vanilla_halving(g, hc);
        auto adv = make_fixed(random_realizable_sequence(g, CostModel::ShortestPath, hc[seed * 5 + 1], 100, seed));
        EXPECT_LE(run(Protocol::deterministic(), g, hc, *learner, *adv, 100, seed).mistakes(), 6u);
    }
}

TEST(Learners, WeightedMajorityPenalty) {
    const auto g = star_graph(3);
    const auto hc = star_family(3);
    BiasedWeightedMajority l(g, hc);
    EXPECT_EQ(l.denominator(), 5.0);
    EXPECT_EQ(det(l).to_string(), "-+++");
    l.observe({2, Label::Positive, std::nullopt, std::nullopt});
    EXPECT_EQ(l.weight_state()->w, (std::vector<double>{1.0, 1.0, 1.0}));
    det(l);
    l.observe({1, Label::Negative, std::nullopt, std::nullopt});
    EXPECT_DOUBLE_EQ(l.weight_state()->logical(0), std::exp(-1.0));
    EXPECT_EQ(l.weight_state()->logical(1), 1.0);
}

TEST(Learners, WeightedMajorityPotentialDrop) {
    const double gamma = std::exp(-1.0);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto g = random_graph({12, 0.2, 1.0, 1.0, 0}, seed);
        const auto hc = random_family(12, 80, 0.25, seed);
        const int delta = g.degree_stats().max_degree;
        BiasedWeightedMajority learner(g, hc);
        auto adv = make_fixed(random_agnostic_sequence(g, CostModel::ShortestPath, hc[0], 300, seed, 0.1));
        double prev = logical_total(*learner.weight_state());
        RunHooks hooks;
        hooks.after_round = [&](const RoundRecord& r, const Learner& l) {
            const double now = logical_total(*l.weight_state());
            if (r.loss > 0.0) {
                EXPECT_LE(now, prev * (1.0 - gamma / (delta + 2)) * (1 + 1e-12));
            } else {
                EXPECT_EQ(now, prev);
            }
            for (std::size_t h = 0; h < hc.size(); ++h) EXPECT_LE(l.weight_state()->logical(h), 1.0);
            prev = now;
        };
        run(Protocol::deterministic(), g, hc, learner, *adv, 300, seed, hooks);
    }
}

TEST(Learners, DefaultRates) {
    EXPECT_NEAR(default_exp3_rate(1000, 16), 0.0186165, 1e-7);
    EXPECT_EQ(default_block_count(1000, 16), 140u);
    EXPECT_NEAR(default_hedge_rate(140, 16), std::sqrt(8.0 * std::log(16.0) / 140.0), 1e-15);
    EXPECT_NEAR(default_explore_rate(10000, 32), 0.18870, 1e-4);
    EXPECT_NEAR(default_adaptive_rate(10000, 32), std::sqrt(8.0 * std::log(32.0) / 10000.0), 1e-15);
}

TEST(Learners, TwoPopThreshold) {
    EXPECT_DOUBLE_EQ(two_pop_threshold(4, 0.5), 1.0 / 7.0);
    for (int d = 1; d <= 6; ++d) {
        EXPECT_DOUBLE_EQ(two_pop_threshold(d, 1.0), 1.0 / (d + 2));
        EXPECT_DOUBLE_EQ(two_pop_threshold(d, 0.0), 1.0 / (d * d + 2));
        EXPECT_DOUBLE_EQ(two_pop_threshold(d, 1e-9), 1.0 / (d * d + 2));
    }
}

TEST(Learners, BlockBounds) {
    using B = std::vector<std::pair<std::size_t, std::size_t>>;
    EXPECT_EQ(block_bounds(10, 3), (B{{0, 3}, {3, 6}, {6, 10}}));
    EXPECT_EQ(block_bounds(4, 4), (B{{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
    EXPECT_THROW(block_bounds(3, 4), std::invalid_argument);
    EXPECT_THROW(block_bounds(3, 0), std::invalid_argument);
}

TEST(Learners, Exp3StartsUniform) {
    const auto hc = star_family(4);
    auto l = make_exp3(hc, 0.1);
    const auto m = std::get<MixedStrategy>(l->commit());
    EXPECT_EQ(m.probabilities, (std::vector<double>(4, 0.25)));
    EXPECT_EQ(m.support->size(), 4u);
}

TEST(Learners, BlockReductionSchedule) {
    const auto g = star_graph(4);
    const auto hc = star_family(4);
    BlockReduction l(g, hc, 100, 7, 0.0, 3);
    EXPECT_EQ(l.block_count(), 7u);
    const auto bounds = block_bounds(100, 7);
    for (std::size_t j = 0; j < 7; ++j) {
        EXPECT_GE(l.probe_rounds()[j], bounds[j].first);
        EXPECT_LT(l.probe_rounds()[j], bounds[j].second);
    }
    EXPECT_EQ(l.probe_index(), 4u);
    EXPECT_THROW(l.set_probe_rounds({0, 1}), std::invalid_argument);
    EXPECT_THROW(l.set_probe_rounds({20, 20, 30, 45, 60, 75, 90}), std::invalid_argument);
}

TEST(Learners, BlockReductionUpdatesOncePerBlock) {
    const auto g = star_graph(8);
    const auto hc = star_family(8);
    BlockReduction learner(g, hc, 400, 20, 0.0, 5);
    auto adv = make_fixed(star_mixture_sequence(8, 400, 5));
    const auto bounds = block_bounds(400, 20);
    std::vector<double> prev(8, 1.0);
    std::size_t block = 0;
    RunHooks hooks;
    hooks.after_round = [&](const RoundRecord& r, const Learner& l) {
        std::vector<double> now(8);
        for (std::size_t h = 0; h < 8; ++h) now[h] = l.weight_state()->logical(h);
        const bool probe = r.t == learner.probe_rounds()[block];
        if (probe) EXPECT_EQ(r.realized, learner.probe_index());
        if (r.t + 1 == bounds[block].second) {
            for (std::size_t h = 0; h < 8; ++h)
                EXPECT_NEAR(now[h], prev[h] * std::exp(-learner.eta() * learner.last_block_estimate()[h]),
                            1e-12 * prev[h]);
            ++block;
        } else {
            EXPECT_EQ(now, prev);
        }
        prev = now;
    };
    run(Protocol::randomized(), g, hc, learner, *adv, 400, 5, hooks);
}

TEST(Learners, AdaptiveExploreUpdatesOnlyOnProbes) {
    const auto g = star_graph(8);
    const auto hc = star_family(8);
    AdaptiveExplore learner(g, hc, 2000, 0.0, 0.0);
    const double factor = std::exp(-learner.eta() / learner.explore());
    auto adv = make_fixed(star_mixture_sequence(8, 2000, 9));
    std::vector<double> prev(8, 1.0);
    std::size_t probes = 0;
    RunHooks hooks;
    hooks.after_round = [&](const RoundRecord& r, const Learner& l) {
        std::vector<double> now(8);
        for (std::size_t h = 0; h < 8; ++h) now[h] = l.weight_state()->logical(h);
        if (r.realized != learner.probe_index()) {
            EXPECT_EQ(now, prev);
        } else {
            ++probes;
            EXPECT_EQ(r.v, r.u);  // all-positive commitment: nobody moves
            const auto wrong = probe_loss_estimate(g, CostModel::ShortestPath, hc, r.v, r.y);
            for (std::size_t h = 0; h < 8; ++h) {
                const double expected = wrong[h] > 0 ? prev[h] * factor : prev[h];
                EXPECT_NEAR(now[h], expected, 1e-12 * prev[h]);
            }
        }
        prev = now;
    };
    run(Protocol::randomized(), g, hc, learner, *adv, 2000, 9, hooks);
    EXPECT_GT(probes, 0u);
}

TEST(Learners, ProbeLossEstimate) {
    const auto g = star_graph(3);
    const auto hc = star_family(3);
    // A truthful (x_0, +1) agent best responds into every h^i's positive leaf.
    EXPECT_EQ(probe_loss_estimate(g, CostModel::ShortestPath, hc, 0, Label::Positive),
              (std::vector<double>{0, 0, 0}));
    EXPECT_EQ(probe_loss_estimate(g, CostModel::ShortestPath, hc, 2, Label::Positive),
              (std::vector<double>{1, 0, 1}));
    EXPECT_EQ(probe_loss_estimate(g, CostModel::ShortestPath, hc, 2, Label::Negative),
              (std::vector<double>{0, 1, 0}));
}

TEST(Learners, SeededRunsRepeat) {
    const auto g = star_graph(6);
    const auto hc = star_family(6);
    auto once = [&](std::uint64_t seed) {
        BlockReduction learner(g, hc, 300, 0, 0.0, derive_seed(seed, "probe-schedule"));
        auto adv = make_fixed(star_mixture_sequence(6, 300, seed));
        return transcript_csv(run(Protocol::randomized(), g, hc, learner, *adv, 300, seed));
    };
    EXPECT_EQ(once(4), once(4));
    EXPECT_NE(once(4), once(5));
}

TEST(Learners, FractionalWrappers) {
    auto c = make_constant_fraction(3, 0.25);
    EXPECT_EQ(std::get<FractionalClassifier>(c->commit()).fractions(), (std::vector<double>(3, 0.25)));
    const auto g = star_graph(3);
    const auto hc = star_family(3);
    auto e = make_embedded_fractional(make_biased_weighted_majority(g, hc));
    EXPECT_EQ(std::get<FractionalClassifier>(e->commit()).fractions(), (std::vector<double>{0, 1, 1, 1}));
    EXPECT_THROW(make_embedded_fractional(make_exp3(hc, 0.1)), std::invalid_argument);
    auto r = make_random_fraction(4, 1);
    const auto drawn = std::get<FractionalClassifier>(r->commit());
    for (double x : drawn.fractions()) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
    }
}
