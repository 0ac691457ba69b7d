#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stratclass/bit_vector.hpp"
#include "stratclass/graph.hpp"
#include "stratclass/policies.hpp"
#include "stratclass/response.hpp"
#include "stratclass/rng.hpp"

namespace stratclass {

// Distribution over an ordered list of deterministic classifiers.
struct MixedStrategy {
    std::shared_ptr<const std::vector<DeterministicClassifier>> support;
    std::vector<double> probabilities;
};

using Commitment = std::variant<DeterministicClassifier, FractionalClassifier, MixedStrategy>;

enum class CommitmentShape { Deterministic, Fractional, Mixed };

CommitmentShape shape_of(const Commitment& c);

// What the learner sees after a round. The agent's true state is never part
// of it.
struct Feedback {
    NodeId v = 0;
    Label y = Label::Negative;
    std::optional<std::size_t> realized_index;  // randomized protocol only
    std::optional<Group> group;                 // two-population protocol only
};

// Per-hypothesis weights. Logical weight = w[h] * exp(log_scale); the scale
// absorbs renormalization so logical weights never increase.
struct WeightState {
    std::vector<double> w;
    BitVector alive;
    double log_scale = 0.0;

    double logical(std::size_t h) const;
};

// Online learner contract: commit() then observe() once per round.
class Learner {
  public:
    virtual ~Learner() = default;

    virtual std::string name() const = 0;
    virtual CommitmentShape shape() const = 0;
    virtual Commitment commit() = 0;
    virtual void observe(const Feedback& feedback) = 0;

    // Null for learners without per-hypothesis state.
    virtual const WeightState* weight_state() const { return nullptr; }
};

// Loss of every h ∈ H on an agent observed truthfully at v:
// ℓ(h, BR_h(v), y) ∈ {0, 1}.
std::vector<double> probe_loss_estimate(const ManipulationGraph& g, CostModel model, const HypothesisClass& hc,
                                        NodeId v, Label y);

// Parameter defaults.
double default_exp3_rate(std::size_t rounds, std::size_t hypotheses);
std::size_t default_block_count(std::size_t rounds, std::size_t hypotheses);
double default_hedge_rate(std::size_t blocks, std::size_t hypotheses);
double default_adaptive_rate(std::size_t rounds, std::size_t hypotheses);
double default_explore_rate(std::size_t rounds, std::size_t hypotheses);
// 1/θ for the two-population learner: min{Δ+1+1/β, Δ²+2}.
double two_pop_denominator(int max_degree, double beta);
inline double two_pop_threshold(int max_degree, double beta) { return 1.0 / two_pop_denominator(max_degree, beta); }

// Block partition [start, end) per block; the last block absorbs T mod K.
std::vector<std::pair<std::size_t, std::size_t>> block_bounds(std::size_t rounds, std::size_t blocks);

// Strictly-more-than-half vote of alive hypotheses on the observed node;
// removes experts whose best-response prediction at v disagrees with y.
std::unique_ptr<Learner> make_vanilla_halving(const ManipulationGraph& g, const HypothesisClass& hc,
                                              CostModel model = CostModel::ShortestPath);
// Majority vote of h(BR_h(·)); removes experts whose raw label at v disagrees with y.
std::unique_ptr<Learner> make_br_halving(const ManipulationGraph& g, const HypothesisClass& hc,
                                         CostModel model = CostModel::ShortestPath);

struct BiasedMajorityOptions {
    // Replace Δ by Δ_out; set automatically for directed graphs.
    bool use_out_degree = false;
};

class BiasedMajority : public Learner {
  public:
    BiasedMajority(const ManipulationGraph& g, const HypothesisClass& hc, BiasedMajorityOptions options = {});
    BiasedMajority(const ManipulationGraph& g, const HypothesisClass& hc, BitVector alive);

    std::string name() const override { return "biased-majority"; }
    CommitmentShape shape() const override { return CommitmentShape::Deterministic; }
    Commitment commit() override;
    void observe(const Feedback& feedback) override;
    const WeightState* weight_state() const override { return &state_; }

    // All hypotheses removed: the input was not realizable.
    bool exhausted() const { return !state_.alive.any(); }
    int degree() const { return degree_; }

  private:
    const ManipulationGraph* graph_;
    const HypothesisClass* hc_;
    int degree_ = 0;
    WeightState state_;
    DeterministicClassifier last_;
};

std::unique_ptr<Learner> make_improved_biased_majority(const ManipulationGraph& g, const HypothesisClass& hc);

struct WeightedMajorityOptions {
    double gamma = 0.36787944117144233;  // 1/e
    // Predict positive iff W⁺(v) * denominator >= W. Zero means Δ+2.
    double denominator = 0.0;
    bool use_out_degree = false;
    // Penalize on false negatives over N²[v] for group A agents.
    bool two_population = false;
    // Renormalize by W when W falls below this.
    double renormalize_below = 1e-200;
};

class BiasedWeightedMajority : public Learner {
  public:
    BiasedWeightedMajority(const ManipulationGraph& g, const HypothesisClass& hc, WeightedMajorityOptions options = {});

    std::string name() const override {
        return options_.two_population ? "two-pop-weighted-majority" : "biased-weighted-majority";
    }
    CommitmentShape shape() const override { return CommitmentShape::Deterministic; }
    Commitment commit() override;
    void observe(const Feedback& feedback) override;
    const WeightState* weight_state() const override { return &state_; }

    double denominator() const { return denominator_; }

  private:
    const ManipulationGraph* graph_;
    const HypothesisClass* hc_;
    WeightedMajorityOptions options_;
    double denominator_ = 0.0;
    WeightState state_;
    DeterministicClassifier last_;
};

std::unique_ptr<Learner> make_biased_weighted_majority(const ManipulationGraph& g, const HypothesisClass& hc,
                                                       double gamma = 0.36787944117144233);
std::unique_ptr<Learner> make_two_pop_weighted_majority(const ManipulationGraph& g, const HypothesisClass& hc,
                                                        double beta, double gamma = 0.36787944117144233);

// Bandit-feedback EXP3 over H.
std::unique_ptr<Learner> make_exp3(const HypothesisClass& hc, double eta);

class BlockReduction : public Learner {
  public:
    // blocks == 0 and eta <= 0 select the defaults.
    BlockReduction(const ManipulationGraph& g, const HypothesisClass& hc, std::size_t rounds, std::size_t blocks,
                   double eta, std::uint64_t seed, CostModel model = CostModel::ShortestPath);

    std::string name() const override { return "block-reduction"; }
    CommitmentShape shape() const override { return CommitmentShape::Mixed; }
    Commitment commit() override;
    void observe(const Feedback& feedback) override;
    const WeightState* weight_state() const override { return &state_; }

    // Replaces the seeded schedule: one round per block, inside that block.
    void set_probe_rounds(std::vector<std::size_t> probes);

    std::size_t block_count() const { return bounds_.size(); }
    double eta() const { return eta_; }
    const std::vector<std::size_t>& probe_rounds() const { return probes_; }
    // Index of the all-positive classifier in the support.
    std::size_t probe_index() const { return hc_->size(); }
    // Loss estimates fed to the most recent Hedge update.
    const std::vector<double>& last_block_estimate() const { return last_estimate_; }

  private:
    const ManipulationGraph* graph_;
    const HypothesisClass* hc_;
    CostModel model_;
    double eta_ = 0.0;
    std::vector<double> last_estimate_;
    std::vector<std::pair<std::size_t, std::size_t>> bounds_;
    std::vector<std::size_t> probes_;
    std::shared_ptr<const std::vector<DeterministicClassifier>> support_;
    WeightState state_;
    std::vector<double> estimate_;
    std::size_t round_ = 0;
    std::size_t block_ = 0;
};

class AdaptiveExplore : public Learner {
  public:
    // eta <= 0 and explore <= 0 select the defaults; explore is clipped to (0, 1].
    AdaptiveExplore(const ManipulationGraph& g, const HypothesisClass& hc, std::size_t rounds, double eta,
                    double explore, CostModel model = CostModel::ShortestPath);

    std::string name() const override { return "adaptive-explore"; }
    CommitmentShape shape() const override { return CommitmentShape::Mixed; }
    Commitment commit() override;
    void observe(const Feedback& feedback) override;
    const WeightState* weight_state() const override { return &state_; }

    double eta() const { return eta_; }
    double explore() const { return explore_; }
    std::size_t probe_index() const { return hc_->size(); }

  private:
    const ManipulationGraph* graph_;
    const HypothesisClass* hc_;
    CostModel model_;
    double eta_ = 0.0;
    double explore_ = 0.0;
    std::shared_ptr<const std::vector<DeterministicClassifier>> support_;
    WeightState state_;
};

// Fractional-protocol learners.
std::unique_ptr<Learner> make_constant_fraction(std::size_t n, double fraction);
std::unique_ptr<Learner> make_random_fraction(std::size_t n, std::uint64_t seed);
// Wraps a deterministic learner and embeds its commitments as {0,1} fractions.
std::unique_ptr<Learner> make_embedded_fractional(std::unique_ptr<Learner> inner);

}  // namespace stratclass
