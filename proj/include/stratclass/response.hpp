#pragma once

#include <optional>
#include <string_view>

#include "stratclass/bit_vector.hpp"
#include "stratclass/graph.hpp"
#include "stratclass/policies.hpp"

namespace stratclass {

// Two-population protocol: group A pays 0.5 per edge, group B pays 1.
enum class Group { A, B };

inline constexpr char group_char(Group g) { return g == Group::A ? 'A' : 'B'; }

struct Agent {
    NodeId u = 0;  // true (hidden) state
    Label y = Label::Negative;
    std::optional<Group> group;

    friend bool operator==(const Agent&, const Agent&) = default;
};

struct BestResponseResult {
    NodeId v = 0;  // observable state
    double utility = 0.0;
    bool moved = false;
};

// Agent's best response to a deterministic classifier. Ties go to the higher
// Value, then to staying put, then to the smallest NodeId. Moving is chosen
// whenever it ties staying on utility and reaches a strictly higher Value.
BestResponseResult best_respond_det(const ManipulationGraph& g, CostModel model, const DeterministicClassifier& h,
                                    NodeId u);

// Best response to fractions: maximizes P(v) - cost(u, v) with the same tie chain.
// model must be ShortestPath or FreeEdge.
BestResponseResult best_respond_frac(const ManipulationGraph& g, CostModel model, const FractionalClassifier& p,
                                     NodeId u);

// Group A uses 0.5 per hop, group B uses 1 per hop. Requires a unit-cost
// undirected graph and a group.
BestResponseResult best_respond_two_pop(const ManipulationGraph& g, const DeterministicClassifier& h, NodeId u,
                                        std::optional<Group> group);

inline int loss_det(const DeterministicClassifier& h, NodeId v, Label y) { return h.label(v) != y ? 1 : 0; }

int loss_br_det(const ManipulationGraph& g, CostModel model, const DeterministicClassifier& h, NodeId u, Label y);
int loss_br_two_pop(const ManipulationGraph& g, const DeterministicClassifier& h, NodeId u, Label y, Group group);

// P(v) when y = -1, 1 - P(v) when y = +1.
inline double expected_loss_frac(const FractionalClassifier& p, NodeId v, Label y) {
    return y == Label::Negative ? p.fraction(v) : 1.0 - p.fraction(v);
}

// Nodes an agent at u can profitably reach against a deterministic
// classifier: {w : cost(u, w) <= 1}. h(BR_h(u)) = +1 iff this set meets h's
// positive region, so learners and the OPT oracle evaluate many hypotheses
// per agent with one intersection each.
BitVector reach_set(const ManipulationGraph& g, CostModel model, NodeId u);
BitVector reach_set_two_pop(const ManipulationGraph& g, NodeId u, Group group);

}  // namespace stratclass
