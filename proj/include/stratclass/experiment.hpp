#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratclass/engine.hpp"
#include "stratclass/linear.hpp"

namespace stratclass {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Flat `key = value` experiment description. Unknown keys are rejected.
//
//   protocol        deterministic | fractional | randomized | two-pop | perceptron
//   cost_model      shortest-path | free-edge | unit-edge
//   graph           graph spec (see build_graph)
//   hypotheses      hypothesis spec (see build_hypotheses)
//   hypothesis_limit  keep only the first k hypotheses (0 = all)
//   learner         see learner_names()
//   gamma eta blocks explore fraction        learner parameters
//   adversary       see adversary_names()
//   sequence        agent file for adversary = fixed ("u y" per line, cycled to T)
//   target          index of h* in H for the random adversaries
//   noise positive_rate epsilon              adversary parameters
//   T seed repetitions beta name
//   stream alpha w_star                      perceptron protocol
struct ExperimentConfig {
    std::string protocol = "deterministic";
    std::string cost_model = "shortest-path";
    std::string graph;
    std::string hypotheses = "star";
    std::size_t hypothesis_limit = 0;
    std::string learner;
    double gamma = 0.36787944117144233;
    double eta = 0.0;
    std::size_t blocks = 0;
    double explore = 0.0;
    double fraction = 0.5;
    std::string adversary;
    std::string sequence;
    std::size_t target = 0;
    double noise = 0.0;
    double positive_rate = 0.5;
    double epsilon = 1e-6;
    std::size_t rounds = 0;
    std::uint64_t seed = 0;
    std::size_t repetitions = 1;
    std::optional<double> beta;
    std::string name = "run";
    std::string stream;
    double alpha = 0.0;
    std::vector<double> w_star;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
// Sets one key with the same validation as the file parser.
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);
// Cross-field checks; throws ConfigError.
void validate(const ExperimentConfig& cfg);

const std::vector<std::string>& learner_names();
const std::vector<std::string>& adversary_names();

// Immutable inputs shared by every repetition.
struct PreparedExperiment {
    ExperimentConfig config;
    Protocol protocol;
    std::shared_ptr<const ManipulationGraph> graph;
    std::shared_ptr<const ManipulationGraph> learner_graph;  // expand(graph) on weighted graphs
    std::shared_ptr<const HypothesisClass> hypotheses;
    std::vector<Agent> fixed_sequence;
    linear::LinearStream stream;
};

PreparedExperiment prepare(const ExperimentConfig& cfg);

std::unique_ptr<Learner> make_learner(const PreparedExperiment& ex, std::uint64_t seed);
std::unique_ptr<Adversary> make_adversary(const PreparedExperiment& ex, std::uint64_t seed);

// One repetition of a graph protocol.
Transcript run_once(const PreparedExperiment& ex, std::uint64_t seed);
MonteCarloResult run_experiment(const PreparedExperiment& ex);

struct TheoreticalBound {
    std::string formula;
    double value = 0.0;
};

// The learner's guarantee evaluated at mean OPT, when it has one.
std::optional<TheoreticalBound> theoretical_bound(const PreparedExperiment& ex, double mean_opt);

void write_summary(std::ostream& out, const PreparedExperiment& ex, const MonteCarloSummary& s);

struct PerceptronSummary {
    std::size_t repetitions = 0;
    Stat mistakes;
    double hinge = 0.0;
    double bound = 0.0;
    std::vector<linear::PerceptronResult> runs;
};

PerceptronSummary run_perceptron_experiment(const PreparedExperiment& ex);
void write_perceptron_csv(std::ostream& out, const linear::PerceptronResult& r, std::size_t run_id, bool header);
void write_perceptron_summary(std::ostream& out, const PreparedExperiment& ex, const PerceptronSummary& s);

}  // namespace stratclass
