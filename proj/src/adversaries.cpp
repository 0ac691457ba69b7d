#include "stratclass/adversaries.hpp"

#include <variant>

#include "stratclass/rng.hpp"

namespace stratclass {
namespace {

// star(Δ) with center 0: every edge touches node 0 and every leaf has one edge.
int require_star(const ManipulationGraph& g) {
    const std::size_t n = g.node_count();
    if (n < 2 || g.directed() || g.edges().size() != n - 1) throw AdversaryError("adversary requires a star graph");
    for (const Edge& e : g.edges()) {
        if (e.from != 0 && e.to != 0) throw AdversaryError("adversary requires a star graph centered at node 0");
    }
    return static_cast<int>(n - 1);
}

template <class T>
const T& expect(const Commitment& c, const char* who) {
    if (const auto* x = std::get_if<T>(&c)) return *x;
    throw AdversaryError(std::string(who) + " received a commitment of the wrong shape");
}

class FixedAdversary : public Adversary {
  public:
    explicit FixedAdversary(std::vector<Agent> agents) : agents_(std::move(agents)) {}
    std::string name() const override { return "fixed"; }
    bool adaptive() const override { return false; }
    Agent next(const Commitment&) override {
        if (cursor_ >= agents_.size()) throw AdversaryError("fixed sequence exhausted");
        return agents_[cursor_++];
    }

  private:
    std::vector<Agent> agents_;
    std::size_t cursor_ = 0;
};

class DetLowerBound : public Adversary {
  public:
    explicit DetLowerBound(const ManipulationGraph& g) { require_star(g); }
    std::string name() const override { return "det-lower-bound"; }
    bool adaptive() const override { return true; }
    Agent next(const Commitment& c) override {
        return det_lower_bound_agent(expect<DeterministicClassifier>(c, "det-lower-bound"));
    }
};

class DetLowerBoundRealizable : public Adversary {
  public:
    explicit DetLowerBoundRealizable(const ManipulationGraph& g)
        : leaves_(require_star(g)), survivors_(static_cast<std::size_t>(leaves_), true) {}
    std::string name() const override { return "det-lower-bound-realizable"; }
    bool adaptive() const override { return true; }
    Agent next(const Commitment& c) override {
        const auto& h = expect<DeterministicClassifier>(c, "det-lower-bound-realizable");
        if (round_++ < static_cast<std::size_t>(leaves_ - 1)) {
            const Agent a = det_lower_bound_agent(h);
            // Only h^j errs on (x_j, −1); nobody errs on (x_0, +1).
            if (a.y == Label::Negative) survivors_.set(a.u - 1, false);
            return a;
        }
        if (!secret_) {
            survivors_.for_each_set([&](std::size_t i) {
                if (!secret_) secret_ = static_cast<NodeId>(i + 1);
            });
        }
        return Agent{*secret_, Label::Positive, std::nullopt};
    }

  private:
    int leaves_;
    BitVector survivors_;
    std::size_t round_ = 0;
    std::optional<NodeId> secret_;
};

class FracFreeEdge : public Adversary {
  public:
    explicit FracFreeEdge(const ManipulationGraph& g) { require_star(g); }
    std::string name() const override { return "frac-free-edge"; }
    bool adaptive() const override { return true; }
    Agent next(const Commitment& c) override {
        return frac_free_edge_agent(expect<FractionalClassifier>(c, "frac-free-edge"));
    }
};

class FracWeighted : public Adversary {
  public:
    FracWeighted(const ManipulationGraph& g, double epsilon) : weight_(0.5 + epsilon) {
        require_star(g);
        for (const Edge& e : g.edges()) {
            if (e.weight != weight_) throw AdversaryError("frac-weighted requires every edge weight to equal 0.5 + epsilon");
        }
    }
    std::string name() const override { return "frac-weighted"; }
    bool adaptive() const override { return true; }
    Agent next(const Commitment& c) override {
        return frac_weighted_agent(expect<FractionalClassifier>(c, "frac-weighted"), weight_);
    }

  private:
    double weight_;
};

class GreedyRealizable : public Adversary {
  public:
    GreedyRealizable(const ManipulationGraph& g, const HypothesisClass& hc, CostModel model)
        : survivors_(hc.size(), true) {
        if (hc.node_count() != g.node_count()) throw AdversaryError("hypotheses and graph disagree on node count");
        for (NodeId u = 0; u < g.node_count(); ++u) {
            reach_.push_back(reach_set(g, model, u));
            BitVector hits(hc.size());
            reach_.back().for_each_set([&](std::size_t x) { hits |= hc.positive_by_node()[x]; });
            strategic_positive_.push_back(std::move(hits));
        }
    }
    std::string name() const override { return "greedy-realizable"; }
    bool adaptive() const override { return true; }
    Agent next(const Commitment& c) override {
        const auto& h = expect<DeterministicClassifier>(c, "greedy-realizable");
        std::optional<Agent> best;
        std::size_t best_kept = 0;
        for (NodeId u = 0; u < reach_.size(); ++u) {
            const bool learner_positive = reach_[u].count_and(h.positive_bits()) > 0;
            const Label y = learner_positive ? Label::Negative : Label::Positive;
            const std::size_t kept = survivors_.count_and(consistent(u, y));
            if (kept > best_kept) {
                best_kept = kept;
                best = Agent{u, y, std::nullopt};
            }
        }
        if (!best) {
            std::optional<std::size_t> first;
            survivors_.for_each_set([&](std::size_t i) {
                if (!first) first = i;
            });
            if (!first) throw AdversaryError("greedy-realizable lost every hypothesis");
            const bool positive = strategic_positive_[0].test(*first);
            best = Agent{0, positive ? Label::Positive : Label::Negative, std::nullopt};
        }
        survivors_ &= consistent(best->u, best->y);
        return *best;
    }

  private:
    BitVector consistent(NodeId u, Label y) const {
        return y == Label::Positive ? strategic_positive_[u] : ~strategic_positive_[u];
    }

    std::vector<BitVector> reach_;
    std::vector<BitVector> strategic_positive_;
    BitVector survivors_;
};

Agent negative_at(NodeId leaf) { return Agent{leaf, Label::Negative, std::nullopt}; }
Agent center_positive() { return Agent{0, Label::Positive, std::nullopt}; }

}  // namespace

Agent det_lower_bound_agent(const DeterministicClassifier& h) {
    if (h.node_count() < 2) throw AdversaryError("det-lower-bound needs at least one leaf");
    if (h.positive(0)) return negative_at(1);
    for (NodeId j = 1; j < h.node_count(); ++j) {
        if (h.positive(j)) return negative_at(j);
    }
    return center_positive();
}

Agent frac_free_edge_agent(const FractionalClassifier& p) {
    if (p.node_count() < 2) throw AdversaryError("frac-free-edge needs at least one leaf");
    if (p.fraction(0) >= 0.5) return negative_at(1);
    for (NodeId j = 1; j < p.node_count(); ++j) {
        if (p.fraction(j) >= 0.5) return negative_at(j);
    }
    return center_positive();
}

Agent frac_weighted_agent(const FractionalClassifier& p, double w) {
    const std::size_t n = p.node_count();
    if (n < 2) throw AdversaryError("frac-weighted needs at least one leaf");
    double top = 0.0;
    for (std::size_t v = 0; v < n; ++v) top = std::max(top, p.fraction(static_cast<NodeId>(v)));
    if (top < w) return center_positive();
    for (NodeId i = 1; i < n; ++i) {
        if (p.fraction(i) == top) return negative_at(i);
    }
    // The maximum sits at the center only.
    for (NodeId i = 1; i < n; ++i) {
        if (p.fraction(i) < top - w) return negative_at(i);
    }
    // Nobody moves; take the larger of the two available losses.
    if (1.0 - top >= top - w) return center_positive();
    return negative_at(1);
}

std::unique_ptr<Adversary> make_fixed(std::vector<Agent> agents) {
    return std::make_unique<FixedAdversary>(std::move(agents));
}
std::unique_ptr<Adversary> make_det_lower_bound(const ManipulationGraph& g) { return std::make_unique<DetLowerBound>(g); }
std::unique_ptr<Adversary> make_det_lower_bound_realizable(const ManipulationGraph& g) {
    return std::make_unique<DetLowerBoundRealizable>(g);
}
std::unique_ptr<Adversary> make_frac_free_edge(const ManipulationGraph& g) { return std::make_unique<FracFreeEdge>(g); }
std::unique_ptr<Adversary> make_frac_weighted(const ManipulationGraph& g, double epsilon) {
    return std::make_unique<FracWeighted>(g, epsilon);
}

std::unique_ptr<Adversary> make_greedy_realizable(const ManipulationGraph& g, const HypothesisClass& hc,
                                                  CostModel model) {
    return std::make_unique<GreedyRealizable>(g, hc, model);
}

std::vector<Agent> random_realizable_sequence(const ManipulationGraph& g, CostModel model,
                                              const DeterministicClassifier& h_star, std::size_t rounds,
                                              std::uint64_t seed, double positive_rate) {
    std::vector<NodeId> positives;
    std::vector<NodeId> negatives;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        (loss_br_det(g, model, h_star, u, Label::Positive) == 0 ? positives : negatives).push_back(u);
    }
    if (positive_rate > 0.0 && positives.empty()) {
        throw AdversaryError("target hypothesis has no reachable positive region but positives were requested");
    }
    Rng rng(seed);
    std::vector<Agent> out;
    out.reserve(rounds);
    for (std::size_t t = 0; t < rounds; ++t) {
        const bool want_positive = uniform_real(rng) < positive_rate;
        const bool positive = want_positive ? true : negatives.empty();
        const auto& pool = positive ? positives : negatives;
        out.push_back(Agent{pool[uniform_index(rng, pool.size())], positive ? Label::Positive : Label::Negative,
                            std::nullopt});
    }
    return out;
}

std::vector<Agent> random_agnostic_sequence(const ManipulationGraph& g, CostModel model,
                                            const DeterministicClassifier& h_star, std::size_t rounds,
                                            std::uint64_t seed, double noise, double positive_rate) {
    auto agents = random_realizable_sequence(g, model, h_star, rounds, seed, positive_rate);
    Rng rng(derive_seed(seed, "noise"));
    for (Agent& a : agents) {
        if (uniform_real(rng) < noise) a.y = flip(a.y);
    }
    return agents;
}

std::vector<Agent> star_mixture_sequence(int leaves, std::size_t rounds, std::uint64_t seed) {
    if (leaves < 1) throw AdversaryError("mixture needs at least one leaf");
    Rng rng(seed);
    std::vector<double> leaf_weights;
    for (int i = 1; i <= leaves; ++i) leaf_weights.push_back(static_cast<double>(i));
    std::discrete_distribution<int> skewed(leaf_weights.begin(), leaf_weights.end());
    std::vector<Agent> out;
    out.reserve(rounds);
    for (std::size_t t = 0; t < rounds; ++t) {
        const double coin = uniform_real(rng);
        if (coin < 0.3) {
            out.push_back(center_positive());
        } else if (coin < 0.4) {
            out.push_back(Agent{static_cast<NodeId>(1 + uniform_index(rng, static_cast<std::size_t>(leaves))),
                                Label::Positive, std::nullopt});
        } else {
            out.push_back(negative_at(static_cast<NodeId>(1 + skewed(rng))));
        }
    }
    return out;
}

}  // namespace stratclass
