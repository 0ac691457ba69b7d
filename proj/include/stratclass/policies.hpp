#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stratclass/bit_vector.hpp"
#include "stratclass/graph.hpp"

namespace stratclass {

class PolicyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Label : std::int8_t { Negative = -1, Positive = 1 };

inline constexpr Label flip(Label y) { return y == Label::Positive ? Label::Negative : Label::Positive; }
inline constexpr char label_char(Label y) { return y == Label::Positive ? '+' : '-'; }
inline constexpr int label_int(Label y) { return static_cast<int>(y); }

// Total labeling of the graph's nodes, stored as the bit set of its positive region.
class DeterministicClassifier {
  public:
    DeterministicClassifier() = default;
    explicit DeterministicClassifier(BitVector positive) : positive_(std::move(positive)) {}

    static DeterministicClassifier from_labels(std::span<const Label> labels);
    // Parses a string of '+'/'-' characters.
    static DeterministicClassifier parse(std::string_view text);

    std::size_t node_count() const { return positive_.size(); }
    bool positive(NodeId v) const { return positive_.test(v); }
    Label label(NodeId v) const { return positive(v) ? Label::Positive : Label::Negative; }
    const BitVector& positive_bits() const { return positive_; }
    std::vector<NodeId> positive_region() const;
    std::string to_string() const;

    friend bool operator==(const DeterministicClassifier&, const DeterministicClassifier&) = default;

  private:
    BitVector positive_;
};

// Per-node probability of a positive classification.
class FractionalClassifier {
  public:
    FractionalClassifier() = default;
    // Throws PolicyError if a fraction lies outside [0, 1].
    explicit FractionalClassifier(std::vector<double> fractions);

    static FractionalClassifier embed(const DeterministicClassifier& h);

    std::size_t node_count() const { return fractions_.size(); }
    double fraction(NodeId v) const { return fractions_[v]; }
    const std::vector<double>& fractions() const { return fractions_; }

    // The underlying deterministic classifier when every fraction is 0 or 1.
    bool is_deterministic() const;
    DeterministicClassifier to_deterministic() const;

    friend bool operator==(const FractionalClassifier&, const FractionalClassifier&) = default;

  private:
    std::vector<double> fractions_;
};

// Finite ordered hypothesis class. Also keeps the transposed view
// positive_by_node()[v] = {h : h(v) = +1} for vote counting.
class HypothesisClass {
  public:
    explicit HypothesisClass(std::vector<DeterministicClassifier> hypotheses);

    std::size_t size() const { return hypotheses_.size(); }
    std::size_t node_count() const { return node_count_; }
    const DeterministicClassifier& operator[](std::size_t i) const { return hypotheses_[i]; }
    const std::vector<DeterministicClassifier>& hypotheses() const { return hypotheses_; }
    std::span<const BitVector> positive_by_node() const { return positive_by_node_; }

    // First k hypotheses.
    HypothesisClass prefix(std::size_t k) const;

  private:
    std::size_t node_count_ = 0;
    std::vector<DeterministicClassifier> hypotheses_;
    std::vector<BitVector> positive_by_node_;
};

// h^i (index i-1) labels only leaf x_i positive on star(Δ).
HypothesisClass star_family(int leaves);
DeterministicClassifier all_positive(std::size_t n);
DeterministicClassifier all_negative(std::size_t n);
// All 2^n labelings; index bit i is node i's label (1 = +1). Throws if 2^n > cap.
HypothesisClass full_family(std::size_t n, std::size_t cap);
// `count` distinct random labelings (count <= 2^n), each positive with
// probability positive_rate per node.
HypothesisClass random_family(std::size_t n, std::size_t count, double positive_rate, std::uint64_t seed);

using LabeledNode = std::pair<NodeId, Label>;

// Every positive example is within one hop of the positive region of h_star and
// every negative example is farther. Requires a unit-cost undirected graph.
bool verify_realizable(const ManipulationGraph& g, const DeterministicClassifier& h_star,
                       std::span<const LabeledNode> seq);

// One hypothesis per line as a '+'/'-' string of length n. Blank lines and
// '#' comments are ignored.
HypothesisClass parse_hypotheses(std::istream& in);
HypothesisClass load_hypotheses(const std::string& path);
void write_hypotheses(std::ostream& out, const HypothesisClass& hc);

// Textual spec used by configs: star | full[:cap] | file:<path> | random:<count>[:<rate>]
HypothesisClass build_hypotheses(std::string_view spec, const ManipulationGraph& g, std::uint64_t seed = 0);

}  // namespace stratclass
