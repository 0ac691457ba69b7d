#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratclass/graph.hpp"
#include "stratclass/learners.hpp"
#include "stratclass/policies.hpp"
#include "stratclass/response.hpp"

namespace stratclass {

class AdversaryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Picks the next agent. Oblivious adversaries ignore the commitment; adaptive
// ones see exactly the commitment (never the realized draw).
class Adversary {
  public:
    virtual ~Adversary() = default;
    virtual std::string name() const = 0;
    virtual bool adaptive() const = 0;
    virtual Agent next(const Commitment& commitment) = 0;
};

// Case analysis on star(Δ) against a deterministic commitment:
// h(x_0) = +1 → (x_1, −1); h ≡ −1 → (x_0, +1); else (x_j, −1) for the
// smallest positive leaf j.
Agent det_lower_bound_agent(const DeterministicClassifier& h);
// Free-edge fractional construction (forces expected loss >= 0.5).
Agent frac_free_edge_agent(const FractionalClassifier& p);
// Weighted fractional construction with edge weight w = 0.5 + ε
// (forces expected loss >= 1/4 − ε/2).
Agent frac_weighted_agent(const FractionalClassifier& p, double edge_weight);

std::unique_ptr<Adversary> make_fixed(std::vector<Agent> agents);
std::unique_ptr<Adversary> make_det_lower_bound(const ManipulationGraph& g);
// Forces Δ−1 mistakes while keeping a zero-loss expert, then repeats
// (x_s, +1) for the smallest surviving s.
std::unique_ptr<Adversary> make_det_lower_bound_realizable(const ManipulationGraph& g);
std::unique_ptr<Adversary> make_frac_free_edge(const ManipulationGraph& g);
std::unique_ptr<Adversary> make_frac_weighted(const ManipulationGraph& g, double epsilon);
// Works on any graph and class: each round picks the agent the learner
// misclassifies that keeps the most hypotheses at zero loss so far (ties to
// the smallest u). When no such agent exists it repeats an agent labeled by
// the first surviving hypothesis, so the stream stays realizable.
std::unique_ptr<Adversary> make_greedy_realizable(const ManipulationGraph& g, const HypothesisClass& hc,
                                                  CostModel model = CostModel::ShortestPath);

// Oblivious stream labeled by h_star under best responses, so h_star has zero
// loss. Each agent is a true positive with probability positive_rate when both
// label pools are non-empty.
std::vector<Agent> random_realizable_sequence(const ManipulationGraph& g, CostModel model,
                                              const DeterministicClassifier& h_star, std::size_t rounds,
                                              std::uint64_t seed, double positive_rate = 0.5);
// Realizable stream with each label flipped independently with probability noise.
std::vector<Agent> random_agnostic_sequence(const ManipulationGraph& g, CostModel model,
                                            const DeterministicClassifier& h_star, std::size_t rounds,
                                            std::uint64_t seed, double noise, double positive_rate = 0.5);
// Oblivious mixture on star(Δ): (x_0,+1) w.p. 0.3, (x_i,+1) w.p. 0.1, and
// otherwise (x_i,−1) with leaf i drawn with probability ∝ i.
std::vector<Agent> star_mixture_sequence(int leaves, std::size_t rounds, std::uint64_t seed);

}  // namespace stratclass
