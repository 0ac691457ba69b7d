#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracle.hpp"
#include "stratclass/learners.hpp"
#include "stratclass/linear.hpp"

using namespace stratclass;
using namespace stratclass::linear;

TEST(Linear, BestResponseExamples) {
    const Vec w{1.0, 0.0};
    const Vec moved = linear_best_respond(w, 0.5, {0.2, 0.0});
    EXPECT_NEAR(moved[0], 0.5, 1e-12);
    EXPECT_EQ(moved[1], 0.0);
    EXPECT_TRUE(shifted_positive(w, 0.5, moved));
    EXPECT_EQ(linear_best_respond(w, 0.5, {-0.2, 0.0}), (Vec{-0.2, 0.0}));
    EXPECT_EQ(linear_best_respond(w, 0.5, {0.9, 0.3}), (Vec{0.9, 0.3}));
    EXPECT_EQ(linear_best_respond({0.0, 0.0}, 0.5, {0.2, 0.0}), (Vec{0.2, 0.0}));
    EXPECT_FALSE(shifted_positive({0.0, 0.0}, 0.0, {1.0, 1.0}));
    EXPECT_THROW(linear_best_respond(w, -1.0, {0.0, 0.0}), LinearError);
}

TEST(Linear, HingeExamples) {
    LinearStream s{2, {{{1.0, 0.0}, Label::Positive}, {{0.0, 0.0}, Label::Positive}, {{1.0, 0.0}, Label::Negative}}};
    const Vec w{1.0, 0.0};
    EXPECT_EQ(hinge_loss(w, LinearStream{2, {s.examples[0]}}), 0.0);
    EXPECT_EQ(hinge_loss(w, LinearStream{2, {s.examples[1]}}), 1.0);
    EXPECT_EQ(hinge_loss(w, LinearStream{2, {s.examples[2]}}), 2.0);
    EXPECT_EQ(hinge_loss(w, s), 3.0);
    EXPECT_EQ(s.radius(), 1.0);
}

// Best responding to the α-shifted classifier recovers the unshifted label
// and never moves farther than α.
TEST(Linear, ShiftCorrectness) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 5000; ++trial) {
        const std::size_t d = 1 + trial % 5;
        Vec w(d), z(d);
        for (auto& x : w) x = gauss(rng);
        for (auto& x : z) x = gauss(rng);
        const double alpha = unit(rng);
        const Vec x = linear_best_respond(w, alpha, z);
        EXPECT_EQ(shifted_positive(w, alpha, x), dot(w, z) >= 0.0);
        Vec diff(d);
        for (std::size_t i = 0; i < d; ++i) diff[i] = x[i] - z[i];
        EXPECT_LE(norm(diff), alpha + 1e-9);
    }
}

TEST(Linear, DefaultBlocks) {
    EXPECT_EQ(default_perceptron_blocks(400, 1.0, 1.0), 20u);
    EXPECT_EQ(default_perceptron_blocks(10, 0.0, 1.0), 1u);
    EXPECT_EQ(default_perceptron_blocks(10, 5.0, 5.0), 10u);
}

TEST(Linear, MarginStream) {
    const auto s = margin_stream(3, 500, 0.2, 1.0, 0.0, 4);
    EXPECT_EQ(s.size(), 500u);
    EXPECT_LE(s.radius(), 1.0 + 1e-12);
    for (const auto& e : s.examples) {
        EXPECT_GE(label_int(e.y) * e.z[0], 0.2 - 1e-12);
    }
    EXPECT_EQ(hinge_loss({5.0, 0.0, 0.0}, s), 0.0);
    EXPECT_THROW(margin_stream(2, 5, 2.0, 1.0, 0.0, 1), LinearError);
}

TEST(Linear, ProbesAreTheOnlyUpdates) {
    const auto s = margin_stream(2, 300, 0.1, 1.0, 0.1, 6);
    const auto r = strategic_perceptron_run(s, 0.3, 15, 6);
    ASSERT_EQ(r.probe_rounds.size(), 15u);
    ASSERT_EQ(r.rounds.size(), 300u);
    std::size_t probes = 0, mistakes = 0;
    for (const auto& rec : r.rounds) {
        if (rec.updated) EXPECT_TRUE(rec.probe);
        if (rec.probe) {
            ++probes;
            EXPECT_EQ(rec.prediction, Label::Positive);
        }
        mistakes += rec.prediction != rec.y;
    }
    EXPECT_EQ(probes, 15u);
    EXPECT_EQ(mistakes, r.mistakes);
    const auto bounds = block_bounds(300, 15);
    for (std::size_t j = 0; j < 15; ++j) {
        EXPECT_GE(r.probe_rounds[j], bounds[j].first);
        EXPECT_LT(r.probe_rounds[j], bounds[j].second);
    }
}

TEST(Linear, MatchesClassicPerceptronOnProbes) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = margin_stream(4, 400, 0.05, 1.0, 0.05, seed);
        const auto r = strategic_perceptron_run(s, 0.25, 25, seed);
        std::vector<std::pair<std::vector<double>, int>> probed;
        for (std::size_t t : r.probe_rounds) probed.push_back({s.examples[t].z, label_int(s.examples[t].y)});
        EXPECT_EQ(r.w, oracle::classic_perceptron(probed, 4));
    }
}

TEST(Linear, AllNegativeProbesUpdateOnce) {
    // w starts at 0 (negative), so a negative probe is already correct.
    LinearStream s{1, std::vector<LinearExample>(10, LinearExample{{1.0}, Label::Negative})};
    const auto r = strategic_perceptron_run(s, 0.5, 10, 1);
    std::size_t updates = 0;
    for (const auto& rec : r.rounds) updates += rec.updated;
    EXPECT_EQ(updates, 0u);
    EXPECT_EQ(r.mistakes, 10u);
}

TEST(Linear, SeparableMistakeBound) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = margin_stream(3, 900, 0.25, 1.0, 0.0, seed);
        const double w_norm = 4.0;  // (1/margin)·e1 has zero hinge loss
        const std::size_t k = default_perceptron_blocks(900, s.radius(), w_norm);
        const auto r = strategic_perceptron_run(s, 0.2, k, seed);
        const double t = 900.0;
        EXPECT_LE(static_cast<double>(r.mistakes), 2.0 * std::sqrt(t) * s.radius() * w_norm + 1e-9);
    }
}

TEST(Linear, StreamCsvRoundTrip) {
    const auto s = margin_stream(3, 20, 0.1, 1.0, 0.2, 3);
    std::stringstream buf;
    write_stream(buf, s);
    const auto back = parse_stream(buf);
    ASSERT_EQ(back.dimension, 3u);
    ASSERT_EQ(back.size(), 20u);
    for (std::size_t i = 0; i < 20; ++i) {
        EXPECT_EQ(back.examples[i].y, s.examples[i].y);
        EXPECT_EQ(back.examples[i].z, s.examples[i].z);
    }
    std::istringstream bad("y,z1\n2,0.5\n");
    EXPECT_THROW(parse_stream(bad), LinearError);
    std::istringstream ragged("y,z1,z2\n1,0.5\n");
    EXPECT_THROW(parse_stream(ragged), LinearError);
    EXPECT_THROW(load_stream("/definitely/missing.csv"), LinearError);
}
