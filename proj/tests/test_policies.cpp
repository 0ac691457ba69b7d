#include <gtest/gtest.h>

#include <sstream>

#include "oracle.hpp"
#include "stratclass/policies.hpp"

using namespace stratclass;

TEST(Policies, StarFamily) {
    const auto hc = star_family(5);
    EXPECT_EQ(hc.size(), 5u);
    EXPECT_EQ(hc.node_count(), 6u);
    EXPECT_EQ(hc[1].to_string(), "--+---");
    EXPECT_EQ(hc[1].positive_region(), (std::vector<NodeId>{2}));
    for (const auto& h : hc.hypotheses()) EXPECT_EQ(h.positive_region().size(), 1u);
    EXPECT_THROW(star_family(0), PolicyError);
}

TEST(Policies, Constants) {
    EXPECT_EQ(all_positive(4).to_string(), "++++");
    EXPECT_EQ(all_negative(3).to_string(), "---");
    EXPECT_EQ(DeterministicClassifier::parse("+-+").label(1), Label::Negative);
    EXPECT_THROW(DeterministicClassifier::parse("+x"), PolicyError);
}

TEST(Policies, FullFamily) {
    const auto hc = full_family(3, 1u << 20);
    EXPECT_EQ(hc.size(), 8u);
    EXPECT_EQ(hc[0], all_negative(3));
    EXPECT_EQ(hc[7], all_positive(3));
    EXPECT_EQ(hc[5].to_string(), "+-+");
    EXPECT_THROW(full_family(20, 1000000), PolicyError);
    EXPECT_EQ(full_family(12, 4096).size(), 4096u);
}

TEST(Policies, RandomFamilyDistinctAndSeeded) {
    const auto a = random_family(6, 40, 0.4, 5);
    const auto b = random_family(6, 40, 0.4, 5);
    EXPECT_EQ(a.hypotheses(), b.hypotheses());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) EXPECT_NE(a[i], a[j]);
    EXPECT_THROW(random_family(2, 5, 0.5, 1), PolicyError);
}

TEST(Policies, TransposedView) {
    const auto hc = full_family(3, 64);
    for (NodeId v = 0; v < 3; ++v)
        for (std::size_t h = 0; h < hc.size(); ++h) EXPECT_EQ(hc.positive_by_node()[v].test(h), hc[h].positive(v));
    EXPECT_EQ(hc.prefix(3).size(), 3u);
}

TEST(Policies, FractionalClassifier) {
    EXPECT_THROW(FractionalClassifier({0.5, 1.2}), PolicyError);
    const auto p = FractionalClassifier::embed(DeterministicClassifier::parse("+-"));
    EXPECT_EQ(p.fractions(), (std::vector<double>{1.0, 0.0}));
    EXPECT_TRUE(p.is_deterministic());
    EXPECT_EQ(p.to_deterministic().to_string(), "+-");
    EXPECT_FALSE(FractionalClassifier({0.5}).is_deterministic());
}

TEST(Policies, VerifyRealizableExamples) {
    const auto g = star_graph(3);
    const auto h1 = star_family(3)[0];
    const std::vector<LabeledNode> ok{{1, Label::Positive}, {2, Label::Negative}};
    EXPECT_TRUE(verify_realizable(g, h1, ok));
    const std::vector<LabeledNode> bad{{0, Label::Negative}};
    EXPECT_FALSE(verify_realizable(g, h1, bad));
    EXPECT_TRUE(verify_realizable(g, h1, std::span<const LabeledNode>{}));
    EXPECT_THROW(verify_realizable(path_graph(3, 0.5), all_negative(3), ok), PolicyError);
}

// verify_realizable agrees with a brute-force best-response loss count on
// every labeling of small stars and every sequence of length <= 3.
TEST(Policies, VerifyRealizableExhaustive) {
    for (int leaves = 1; leaves <= 4; ++leaves) {
        const auto g = star_graph(leaves);
        const auto cost = oracle::floyd(g);
        const std::size_t n = g.node_count();
        const auto hc = full_family(n, 1u << 10);
        std::vector<LabeledNode> atoms;
        for (NodeId u = 0; u < n; ++u) {
            atoms.push_back({u, Label::Positive});
            atoms.push_back({u, Label::Negative});
        }
        for (const auto& h : hc.hypotheses()) {
            std::vector<LabeledNode> seq;
            auto check = [&] {
                int loss = 0;
                for (const auto& [u, y] : seq) loss += oracle::strategic_loss(cost, h, u, y);
                EXPECT_EQ(verify_realizable(g, h, seq), loss == 0);
            };
            check();
            for (const auto& a : atoms) {
                seq = {a};
                check();
                for (const auto& b : atoms) {
                    seq = {a, b};
                    check();
                    for (const auto& c : atoms) {
                        seq = {a, b, c};
                        check();
                    }
                }
            }
        }
    }
}

TEST(Policies, HypothesisFileRoundTrip) {
    const auto hc = star_family(3);
    std::stringstream s;
    write_hypotheses(s, hc);
    EXPECT_EQ(parse_hypotheses(s).hypotheses(), hc.hypotheses());
    std::istringstream mixed("+--\n# note\n\n-+-\n");
    EXPECT_EQ(parse_hypotheses(mixed).size(), 2u);
    std::istringstream ragged("+--\n-+\n");
    EXPECT_THROW(parse_hypotheses(ragged), PolicyError);
}

TEST(Policies, BuildSpecs) {
    const auto g = star_graph(3);
    EXPECT_EQ(build_hypotheses("star", g).size(), 3u);
    EXPECT_EQ(build_hypotheses("full:16", g).size(), 16u);
    EXPECT_EQ(build_hypotheses("random:5:0.3", g, 2).size(), 5u);
    EXPECT_THROW(build_hypotheses("full:4", g), PolicyError);
    EXPECT_THROW(build_hypotheses("nonsense", g), PolicyError);
}
