#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratclass/adversaries.hpp"
#include "stratclass/graph.hpp"
#include "stratclass/learners.hpp"
#include "stratclass/policies.hpp"
#include "stratclass/response.hpp"

namespace stratclass {

class EngineError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Protocol {
    enum class Kind { Deterministic, Fractional, Randomized, TwoPopulation };

    Kind kind = Kind::Deterministic;
    // Agents' cost model. Fractional allows ShortestPath or FreeEdge; the
    // two-population protocol always uses hop counts.
    CostModel model = CostModel::ShortestPath;
    double beta = 1.0;  // P(group B), two-population only

    static Protocol deterministic(CostModel m = CostModel::ShortestPath) { return {Kind::Deterministic, m, 1.0}; }
    static Protocol fractional(CostModel m) { return {Kind::Fractional, m, 1.0}; }
    static Protocol randomized(CostModel m = CostModel::ShortestPath) { return {Kind::Randomized, m, 1.0}; }
    static Protocol two_population(double b) { return {Kind::TwoPopulation, CostModel::UnitEdge, b}; }

    CommitmentShape expected_shape() const;
    std::string name() const;
};

struct RoundRecord {
    std::size_t t = 0;
    NodeId u = 0;  // hidden from the learner
    NodeId v = 0;
    Label y = Label::Negative;
    std::optional<Group> group;
    std::optional<std::size_t> realized;
    double loss = 0.0;  // realized 0/1, or the exact expectation under Fractional
    double cum_loss = 0.0;
};

struct Transcript {
    std::string learner;
    std::string adversary;
    Protocol protocol;
    std::uint64_t seed = 0;
    std::vector<RoundRecord> records;
    std::vector<Agent> agents;  // the hidden sequence, with nature's groups
    std::vector<double> hypothesis_losses;
    double opt = 0.0;

    double cumulative_loss() const { return records.empty() ? 0.0 : records.back().cum_loss; }
    // Rounds with a nonzero loss.
    std::size_t mistakes() const;
};

struct OptResult {
    double opt = 0.0;
    std::vector<double> losses;  // per hypothesis, in class order
};

// Loss of every h ∈ H on `seq` with agents best responding to h itself.
// Under TwoPopulation each agent must carry its group.
OptResult opt_oracle(const ManipulationGraph& g, const Protocol& protocol, const HypothesisClass& hc,
                     std::span<const Agent> seq);
OptResult opt_oracle_serial(const ManipulationGraph& g, const Protocol& protocol, const HypothesisClass& hc,
                            std::span<const Agent> seq);

struct RunHooks {
    // Called after the learner observed round t's feedback.
    std::function<void(const RoundRecord&, const Learner&)> after_round;
};

// Plays T rounds. All randomness comes from named streams of `seed`: the
// realized draw under Randomized uses "learner", nature's coin uses "nature".
Transcript run(const Protocol& protocol, const ManipulationGraph& g, const HypothesisClass& hc, Learner& learner,
               Adversary& adversary, std::size_t rounds, std::uint64_t seed, const RunHooks& hooks = {});

inline double regret(const Transcript& t) { return t.cumulative_loss() - t.opt; }

struct Stat {
    double mean = 0.0;
    double stddev = 0.0;      // sample standard deviation (0 for one run)
    double half_width = 0.0;  // 1.96 · stddev / √n
};

Stat summarize(std::span<const double> values);

struct MonteCarloSummary {
    std::size_t repetitions = 0;
    std::uint64_t seed = 0;
    Stat cumulative_loss;
    Stat regret;
    Stat mistakes;
    Stat opt;
};

struct MonteCarloResult {
    std::vector<Transcript> transcripts;  // in repetition order
    MonteCarloSummary summary;
};

// Seed of repetition i.
inline std::uint64_t repetition_seed(std::uint64_t master, std::size_t i) { return derive_seed(master, i); }

// Runs `run_one(repetition_seed(seed, i))` for i < repetitions, in parallel
// when OpenMP has more than one thread. run_one must build its own learner
// and adversary.
MonteCarloResult monte_carlo(const std::function<Transcript(std::uint64_t)>& run_one, std::size_t repetitions,
                             std::uint64_t seed);
MonteCarloSummary summarize(std::span<const Transcript> transcripts, std::uint64_t seed);

// CSV with header
// run_id,t,learner,adversary,protocol,u,v,y,group,realized,loss,cum_loss
void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, const Transcript& t, std::size_t run_id);
std::string transcript_csv(const Transcript& t, std::size_t run_id = 0);

// Shortest round-trip decimal form.
std::string format_number(double x);

}  // namespace stratclass
