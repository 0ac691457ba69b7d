#include "stratclass/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stratclass/kernels.hpp"

namespace stratclass {
namespace {

int degree_parameter(const ManipulationGraph& g, bool use_out_degree) {
    const auto stats = g.degree_stats();
    return (use_out_degree || g.directed()) ? stats.max_out_degree : stats.max_degree;
}

// {h : some node of `nodes` is positive under h}.
BitVector any_positive(const HypothesisClass& hc, std::span<const NodeId> nodes) {
    BitVector out(hc.size());
    for (NodeId x : nodes) out |= hc.positive_by_node()[x];
    return out;
}

BitVector any_positive(const HypothesisClass& hc, const BitVector& nodes) {
    BitVector out(hc.size());
    nodes.for_each_set([&](std::size_t x) { out |= hc.positive_by_node()[x]; });
    return out;
}

// {h : ℓ(h, BR_h(v), y) = 1} for an agent at v.
BitVector strategic_errors(const ManipulationGraph& g, CostModel model, const HypothesisClass& hc, NodeId v, Label y) {
    const BitVector hits = any_positive(hc, reach_set(g, model, v));
    return y == Label::Positive ? ~hits : hits;
}

double total_weight(const std::vector<double>& w) {
    double sum = 0.0;
    for (double x : w) sum += x;
    return sum;
}

void renormalize_if_small(WeightState& state, double threshold) {
    const double total = total_weight(state.w);
    if (total > 0.0 && total < threshold) {
        for (double& x : state.w) x /= total;
        state.log_scale += std::log(total);
    }
}

DeterministicClassifier classifier_from_votes(std::size_t n, auto&& positive) {
    BitVector bits(n);
    for (std::size_t v = 0; v < n; ++v) bits.set(v, positive(v));
    return DeterministicClassifier(std::move(bits));
}

std::shared_ptr<const std::vector<DeterministicClassifier>> support_with_probe(const HypothesisClass& hc) {
    auto support = std::make_shared<std::vector<DeterministicClassifier>>(hc.hypotheses());
    support->push_back(all_positive(hc.node_count()));
    return support;
}

class VanillaHalving : public Learner {
  public:
    VanillaHalving(const ManipulationGraph& g, const HypothesisClass& hc, CostModel model)
        : graph_(&g), hc_(&hc), model_(model) {
        state_.w.assign(hc.size(), 1.0);
        state_.alive = BitVector(hc.size(), true);
    }

    std::string name() const override { return "vanilla-halving"; }
    CommitmentShape shape() const override { return CommitmentShape::Deterministic; }
    const WeightState* weight_state() const override { return &state_; }

    Commitment commit() override {
        const auto counts = kernels::positive_counts(hc_->positive_by_node(), state_.alive);
        const std::size_t alive = state_.alive.count();
        last_ = classifier_from_votes(hc_->node_count(), [&](std::size_t v) { return 2 * counts[v] > alive; });
        return last_;
    }

    void observe(const Feedback& f) override {
        if (last_.label(f.v) == f.y) return;
        const BitVector wrong = strategic_errors(*graph_, model_, *hc_, f.v, f.y);
        state_.alive &= ~wrong;
        for (std::size_t h = 0; h < hc_->size(); ++h) {
            if (!state_.alive.test(h)) state_.w[h] = 0.0;
        }
    }

  private:
    const ManipulationGraph* graph_;
    const HypothesisClass* hc_;
    CostModel model_;
    WeightState state_;
    DeterministicClassifier last_;
};

class BrHalving : public Learner {
  public:
    BrHalving(const ManipulationGraph& g, const HypothesisClass& hc, CostModel model) : hc_(&hc) {
        state_.w.assign(hc.size(), 1.0);
        state_.alive = BitVector(hc.size(), true);
        // strategic_positive_[v] = {h : h(BR_h(v)) = +1}
        for (std::size_t v = 0; v < hc.node_count(); ++v) {
            strategic_positive_.push_back(any_positive(hc, reach_set(g, model, static_cast<NodeId>(v))));
        }
    }

    std::string name() const override { return "br-halving"; }
    CommitmentShape shape() const override { return CommitmentShape::Deterministic; }
    const WeightState* weight_state() const override { return &state_; }

    Commitment commit() override {
        const auto counts = kernels::positive_counts(strategic_positive_, state_.alive);
        const std::size_t alive = state_.alive.count();
        last_ = classifier_from_votes(hc_->node_count(), [&](std::size_t v) { return 2 * counts[v] > alive; });
        return last_;
    }

    void observe(const Feedback& f) override {
        if (last_.label(f.v) == f.y) return;
        const BitVector& positive = hc_->positive_by_node()[f.v];
        state_.alive &= f.y == Label::Positive ? positive : ~positive;
        for (std::size_t h = 0; h < hc_->size(); ++h) {
            if (!state_.alive.test(h)) state_.w[h] = 0.0;
        }
    }

  private:
    const HypothesisClass* hc_;
    std::vector<BitVector> strategic_positive_;
    WeightState state_;
    DeterministicClassifier last_;
};

class ImprovedBiasedMajority : public Learner {
  public:
    ImprovedBiasedMajority(const ManipulationGraph& g, const HypothesisClass& hc) : graph_(&g), hc_(&hc) {
        state_.w.assign(hc.size(), 1.0);
        state_.alive = BitVector(hc.size(), true);
    }

    std::string name() const override { return "improved-biased-majority"; }
    CommitmentShape shape() const override { return CommitmentShape::Deterministic; }
    const WeightState* weight_state() const override { return inner_ ? inner_->weight_state() : &state_; }

    Commitment commit() override {
        if (inner_) return inner_->commit();
        return all_positive(hc_->node_count());
    }

    void observe(const Feedback& f) override {
        if (inner_) {
            inner_->observe(f);
            return;
        }
        // All-positive only errs on true negatives; N[v] must be all negative.
        if (f.y == Label::Positive) return;
        const auto nbhd = graph_->neighborhood(f.v, 1);
        BitVector keep = ~any_positive(*hc_, nbhd);
        inner_ = std::make_unique<BiasedMajority>(*graph_, *hc_, std::move(keep));
    }

  private:
    const ManipulationGraph* graph_;
    const HypothesisClass* hc_;
    WeightState state_;
    std::unique_ptr<BiasedMajority> inner_;
};

class Exp3 : public Learner {
  public:
    Exp3(const HypothesisClass& hc, double eta) : eta_(eta) {
        state_.w.assign(hc.size(), 1.0);
        state_.alive = BitVector(hc.size(), true);
        support_ = std::make_shared<const std::vector<DeterministicClassifier>>(hc.hypotheses());
    }

    std::string name() const override { return "exp3"; }
    CommitmentShape shape() const override { return CommitmentShape::Mixed; }
    const WeightState* weight_state() const override { return &state_; }

    Commitment commit() override {
        const double total = total_weight(state_.w);
        probabilities_.resize(state_.w.size());
        for (std::size_t h = 0; h < state_.w.size(); ++h) probabilities_[h] = state_.w[h] / total;
        return MixedStrategy{support_, probabilities_};
    }

    void observe(const Feedback& f) override {
        if (!f.realized_index) throw std::logic_error("exp3 needs the realized classifier index");
        const std::size_t i = *f.realized_index;
        const int loss = loss_det((*support_)[i], f.v, f.y);
        if (loss == 0) return;
        state_.w[i] *= std::exp(-eta_ * loss / probabilities_[i]);
        renormalize_if_small(state_, 1e-200);
    }

  private:
    double eta_;
    std::shared_ptr<const std::vector<DeterministicClassifier>> support_;
    WeightState state_;
    std::vector<double> probabilities_;
};

class ConstantFraction : public Learner {
  public:
    ConstantFraction(std::size_t n, double fraction) : commitment_(std::vector<double>(n, fraction)) {}
    std::string name() const override { return "constant-fraction"; }
    CommitmentShape shape() const override { return CommitmentShape::Fractional; }
    Commitment commit() override { return commitment_; }
    void observe(const Feedback&) override {}

  private:
    FractionalClassifier commitment_;
};

class RandomFraction : public Learner {
  public:
    RandomFraction(std::size_t n, std::uint64_t seed) : n_(n), rng_(seed) {}
    std::string name() const override { return "random-fraction"; }
    CommitmentShape shape() const override { return CommitmentShape::Fractional; }
    Commitment commit() override {
        std::vector<double> f(n_);
        for (double& x : f) x = uniform_real(rng_);
        return FractionalClassifier(std::move(f));
    }
    void observe(const Feedback&) override {}

  private:
    std::size_t n_;
    Rng rng_;
};

class EmbeddedFractional : public Learner {
  public:
    explicit EmbeddedFractional(std::unique_ptr<Learner> inner) : inner_(std::move(inner)) {
        if (inner_->shape() != CommitmentShape::Deterministic) {
            throw std::invalid_argument("only deterministic learners can be embedded as fractional");
        }
    }
    std::string name() const override { return inner_->name() + "-embedded"; }
    CommitmentShape shape() const override { return CommitmentShape::Fractional; }
    Commitment commit() override {
        return FractionalClassifier::embed(std::get<DeterministicClassifier>(inner_->commit()));
    }
    void observe(const Feedback& f) override { inner_->observe(f); }
    const WeightState* weight_state() const override { return inner_->weight_state(); }

  private:
    std::unique_ptr<Learner> inner_;
};

}  // namespace

CommitmentShape shape_of(const Commitment& c) {
    switch (c.index()) {
        case 0: return CommitmentShape::Deterministic;
        case 1: return CommitmentShape::Fractional;
        default: return CommitmentShape::Mixed;
    }
}

std::vector<double> probe_loss_estimate(const ManipulationGraph& g, CostModel model, const HypothesisClass& hc,
                                        NodeId v, Label y) {
    const BitVector wrong = strategic_errors(g, model, hc, v, y);
    std::vector<double> out(hc.size(), 0.0);
    wrong.for_each_set([&](std::size_t h) { out[h] = 1.0; });
    return out;
}

double WeightState::logical(std::size_t h) const { return w[h] * std::exp(log_scale); }

double default_exp3_rate(std::size_t rounds, std::size_t hypotheses) {
    const double k = static_cast<double>(hypotheses);
    return std::sqrt(2.0 * std::log(k) / (k * static_cast<double>(rounds)));
}

std::size_t default_block_count(std::size_t rounds, std::size_t hypotheses) {
    const double t = static_cast<double>(rounds);
    const double raw = std::pow(t, 2.0 / 3.0) * std::cbrt(std::log(static_cast<double>(hypotheses)));
    const auto k = static_cast<std::size_t>(std::llround(raw));
    return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(rounds, 1));
}

double default_hedge_rate(std::size_t blocks, std::size_t hypotheses) {
    return std::sqrt(8.0 * std::log(static_cast<double>(hypotheses)) / static_cast<double>(blocks));
}

double default_adaptive_rate(std::size_t rounds, std::size_t hypotheses) {
    return std::sqrt(8.0 * std::log(static_cast<double>(hypotheses)) / static_cast<double>(rounds));
}

double default_explore_rate(std::size_t rounds, std::size_t hypotheses) {
    const double t = static_cast<double>(rounds);
    const double raw = std::pow(t, -0.25) * std::pow(std::log(t * static_cast<double>(hypotheses)), 0.25);
    if (!(raw > 0.0)) return 1.0;
    return std::min(raw, 1.0);
}

double two_pop_denominator(int max_degree, double beta) {
    const double d = static_cast<double>(max_degree);
    const double square = d * d + 2.0;
    if (beta <= 0.0) return square;
    return std::min(d + 1.0 + 1.0 / beta, square);
}

std::vector<std::pair<std::size_t, std::size_t>> block_bounds(std::size_t rounds, std::size_t blocks) {
    if (blocks == 0 || blocks > rounds) throw std::invalid_argument("block count must lie in [1, T]");
    const std::size_t size = rounds / blocks;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t j = 0; j < blocks; ++j) {
        const std::size_t start = j * size;
        const std::size_t end = j + 1 == blocks ? rounds : start + size;
        out.emplace_back(start, end);
    }
    return out;
}

std::unique_ptr<Learner> make_vanilla_halving(const ManipulationGraph& g, const HypothesisClass& hc, CostModel model) {
    return std::make_unique<VanillaHalving>(g, hc, model);
}

std::unique_ptr<Learner> make_br_halving(const ManipulationGraph& g, const HypothesisClass& hc, CostModel model) {
    return std::make_unique<BrHalving>(g, hc, model);
}

BiasedMajority::BiasedMajority(const ManipulationGraph& g, const HypothesisClass& hc, BiasedMajorityOptions options)
    : BiasedMajority(g, hc, BitVector(hc.size(), true)) {
    degree_ = degree_parameter(g, options.use_out_degree);
}

BiasedMajority::BiasedMajority(const ManipulationGraph& g, const HypothesisClass& hc, BitVector alive)
    : graph_(&g), hc_(&hc), degree_(degree_parameter(g, false)) {
    if (hc.node_count() != g.node_count()) throw std::invalid_argument("hypotheses and graph disagree on node count");
    state_.alive = std::move(alive);
    state_.w.assign(hc.size(), 0.0);
    state_.alive.for_each_set([&](std::size_t h) { state_.w[h] = 1.0; });
}

Commitment BiasedMajority::commit() {
    const auto counts = kernels::positive_counts(hc_->positive_by_node(), state_.alive);
    const std::size_t alive = state_.alive.count();
    const auto scale = static_cast<std::size_t>(degree_ + 2);
    last_ = classifier_from_votes(hc_->node_count(), [&](std::size_t v) { return counts[v] * scale >= alive; });
    return last_;
}

void BiasedMajority::observe(const Feedback& f) {
    if (last_.label(f.v) == f.y) return;
    if (f.y == Label::Negative) {
        state_.alive &= ~hc_->positive_by_node()[f.v];
    } else {
        state_.alive &= any_positive(*hc_, graph_->neighborhood(f.v, 1));
    }
    for (std::size_t h = 0; h < hc_->size(); ++h) {
        if (!state_.alive.test(h)) state_.w[h] = 0.0;
    }
}

std::unique_ptr<Learner> make_improved_biased_majority(const ManipulationGraph& g, const HypothesisClass& hc) {
    return std::make_unique<ImprovedBiasedMajority>(g, hc);
}

BiasedWeightedMajority::BiasedWeightedMajority(const ManipulationGraph& g, const HypothesisClass& hc,
                                               WeightedMajorityOptions options)
    : graph_(&g), hc_(&hc), options_(options) {
    if (!(options_.gamma > 0.0 && options_.gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0,1)");
    if (hc.node_count() != g.node_count()) throw std::invalid_argument("hypotheses and graph disagree on node count");
    denominator_ = options_.denominator > 0.0 ? options_.denominator
                                              : static_cast<double>(degree_parameter(g, options_.use_out_degree) + 2);
    state_.w.assign(hc.size(), 1.0);
    state_.alive = BitVector(hc.size(), true);
}

Commitment BiasedWeightedMajority::commit() {
    const auto positive = kernels::positive_weights(hc_->positive_by_node(), state_.w);
    const double total = total_weight(state_.w);
    last_ = classifier_from_votes(hc_->node_count(),
                                  [&](std::size_t v) { return positive[v] * denominator_ >= total; });
    return last_;
}

void BiasedWeightedMajority::observe(const Feedback& f) {
    if (last_.label(f.v) == f.y) return;
    BitVector penalized;
    if (f.y == Label::Negative) {
        penalized = hc_->positive_by_node()[f.v];
    } else {
        int hops = 1;
        if (options_.two_population) {
            if (!f.group) throw std::logic_error("two-population learner needs the agent's group");
            hops = *f.group == Group::A ? 2 : 1;
        }
        penalized = ~any_positive(*hc_, graph_->neighborhood(f.v, hops));
    }
    penalized.for_each_set([&](std::size_t h) { state_.w[h] *= options_.gamma; });
    renormalize_if_small(state_, options_.renormalize_below);
}

std::unique_ptr<Learner> make_biased_weighted_majority(const ManipulationGraph& g, const HypothesisClass& hc,
                                                       double gamma) {
    WeightedMajorityOptions options;
    options.gamma = gamma;
    return std::make_unique<BiasedWeightedMajority>(g, hc, options);
}

std::unique_ptr<Learner> make_two_pop_weighted_majority(const ManipulationGraph& g, const HypothesisClass& hc,
                                                        double beta, double gamma) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0,1]");
    WeightedMajorityOptions options;
    options.gamma = gamma;
    options.two_population = true;
    options.denominator = two_pop_denominator(g.degree_stats().max_degree, beta);
    return std::make_unique<BiasedWeightedMajority>(g, hc, options);
}

std::unique_ptr<Learner> make_exp3(const HypothesisClass& hc, double eta) { return std::make_unique<Exp3>(hc, eta); }

BlockReduction::BlockReduction(const ManipulationGraph& g, const HypothesisClass& hc, std::size_t rounds,
                               std::size_t blocks, double eta, std::uint64_t seed, CostModel model)
    : graph_(&g), hc_(&hc), model_(model) {
    if (rounds == 0) throw std::invalid_argument("block reduction needs T >= 1");
    if (blocks == 0) blocks = default_block_count(rounds, hc.size());
    blocks = std::clamp<std::size_t>(blocks, 1, rounds);
    eta_ = eta > 0.0 ? eta : default_hedge_rate(blocks, hc.size());
    bounds_ = block_bounds(rounds, blocks);
    Rng rng(seed);
    for (const auto& [start, end] : bounds_) probes_.push_back(start + uniform_index(rng, end - start));
    support_ = support_with_probe(hc);
    state_.w.assign(hc.size(), 1.0);
    state_.alive = BitVector(hc.size(), true);
    estimate_.assign(hc.size(), 0.0);
}

Commitment BlockReduction::commit() {
    if (block_ >= bounds_.size()) throw std::logic_error("block reduction ran past its horizon");
    std::vector<double> p(support_->size(), 0.0);
    if (round_ == probes_[block_]) {
        p.back() = 1.0;
    } else {
        const double total = total_weight(state_.w);
        for (std::size_t h = 0; h < state_.w.size(); ++h) p[h] = state_.w[h] / total;
    }
    return MixedStrategy{support_, std::move(p)};
}

void BlockReduction::observe(const Feedback& f) {
    if (round_ == probes_[block_]) {
        // The agent reported truthfully, so every expert's loss is known.
        estimate_ = probe_loss_estimate(*graph_, model_, *hc_, f.v, f.y);
    }
    ++round_;
    if (round_ == bounds_[block_].second) {
        for (std::size_t h = 0; h < state_.w.size(); ++h) state_.w[h] *= std::exp(-eta_ * estimate_[h]);
        renormalize_if_small(state_, 1e-200);
        last_estimate_ = estimate_;
        std::fill(estimate_.begin(), estimate_.end(), 0.0);
        ++block_;
    }
}

void BlockReduction::set_probe_rounds(std::vector<std::size_t> probes) {
    if (probes.size() != bounds_.size()) throw std::invalid_argument("need exactly one probe round per block");
    for (std::size_t j = 0; j < probes.size(); ++j) {
        if (probes[j] < bounds_[j].first || probes[j] >= bounds_[j].second) {
            throw std::invalid_argument("probe round outside its block");
        }
    }
    probes_ = std::move(probes);
}

AdaptiveExplore::AdaptiveExplore(const ManipulationGraph& g, const HypothesisClass& hc, std::size_t rounds, double eta,
                                 double explore, CostModel model)
    : graph_(&g), hc_(&hc), model_(model) {
    if (rounds == 0) throw std::invalid_argument("adaptive explore needs T >= 1");
    eta_ = eta > 0.0 ? eta : default_adaptive_rate(rounds, hc.size());
    explore_ = explore > 0.0 ? std::min(explore, 1.0) : default_explore_rate(rounds, hc.size());
    support_ = support_with_probe(hc);
    state_.w.assign(hc.size(), 1.0);
    state_.alive = BitVector(hc.size(), true);
}

Commitment AdaptiveExplore::commit() {
    std::vector<double> p(support_->size(), 0.0);
    const double total = total_weight(state_.w);
    for (std::size_t h = 0; h < state_.w.size(); ++h) p[h] = (1.0 - explore_) * state_.w[h] / total;
    p.back() = explore_;
    return MixedStrategy{support_, std::move(p)};
}

void AdaptiveExplore::observe(const Feedback& f) {
    if (!f.realized_index) throw std::logic_error("adaptive explore needs the realized classifier index");
    if (*f.realized_index != probe_index()) return;  // estimated loss is zero
    const BitVector wrong = strategic_errors(*graph_, model_, *hc_, f.v, f.y);
    wrong.for_each_set([&](std::size_t h) { state_.w[h] *= std::exp(-eta_ / explore_); });
    renormalize_if_small(state_, 1e-200);
}

std::unique_ptr<Learner> make_constant_fraction(std::size_t n, double fraction) {
    return std::make_unique<ConstantFraction>(n, fraction);
}

std::unique_ptr<Learner> make_random_fraction(std::size_t n, std::uint64_t seed) {
    return std::make_unique<RandomFraction>(n, seed);
}

std::unique_ptr<Learner> make_embedded_fractional(std::unique_ptr<Learner> inner) {
    return std::make_unique<EmbeddedFractional>(std::move(inner));
}

}  // namespace stratclass
