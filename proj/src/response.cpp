#include "stratclass/response.hpp"

namespace stratclass {
namespace {

// Argmax of value(v) - scale * cost(u, v) with the tie chain: higher value,
// then staying put, then smallest id.
template <class ValueFn>
BestResponseResult argmax_response(std::span<const ExtCost> costs, double scale, NodeId u, ValueFn value) {
    const std::size_t n = costs.size();
    bool have = false;
    double best_utility = 0.0;
    double best_value = 0.0;
    NodeId best = u;
    bool best_is_stay = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (costs[i].is_infinite()) continue;
        const auto v = static_cast<NodeId>(i);
        const double val = value(v);
        const double utility = val - scale * costs[i].value();
        bool take = false;
        if (!have || utility > best_utility) {
            take = true;
        } else if (utility == best_utility) {
            if (val > best_value) {
                take = true;
            } else if (val == best_value && !best_is_stay && v == u) {
                take = true;
            }
            // Equal utility and value with a smaller id already held.
        }
        if (take) {
            have = true;
            best_utility = utility;
            best_value = val;
            best = v;
            best_is_stay = v == u;
        }
    }
    return {best, best_utility, best != u};
}

void require_two_pop_graph(const ManipulationGraph& g) {
    if (!g.unit_cost() || g.directed()) throw GraphError("two-population responses require a unit-cost undirected graph");
}

}  // namespace

BestResponseResult best_respond_det(const ManipulationGraph& g, CostModel model, const DeterministicClassifier& h,
                                    NodeId u) {
    return argmax_response(g.cost_row(model, u), 1.0, u, [&](NodeId v) { return h.positive(v) ? 1.0 : 0.0; });
}

BestResponseResult best_respond_frac(const ManipulationGraph& g, CostModel model, const FractionalClassifier& p,
                                     NodeId u) {
    if (model == CostModel::UnitEdge) throw GraphError("fractional responses use shortest-path or free-edge costs");
    return argmax_response(g.cost_row(model, u), 1.0, u, [&](NodeId v) { return p.fraction(v); });
}

BestResponseResult best_respond_two_pop(const ManipulationGraph& g, const DeterministicClassifier& h, NodeId u,
                                        std::optional<Group> group) {
    if (!group) throw GraphError("two-population response needs the agent's group");
    require_two_pop_graph(g);
    const double scale = *group == Group::A ? 0.5 : 1.0;
    return argmax_response(g.cost_row(CostModel::UnitEdge, u), scale, u,
                           [&](NodeId v) { return h.positive(v) ? 1.0 : 0.0; });
}

int loss_br_det(const ManipulationGraph& g, CostModel model, const DeterministicClassifier& h, NodeId u, Label y) {
    return loss_det(h, best_respond_det(g, model, h, u).v, y);
}

int loss_br_two_pop(const ManipulationGraph& g, const DeterministicClassifier& h, NodeId u, Label y, Group group) {
    return loss_det(h, best_respond_two_pop(g, h, u, group).v, y);
}

BitVector reach_set(const ManipulationGraph& g, CostModel model, NodeId u) {
    const auto row = g.cost_row(model, u);
    BitVector out(row.size());
    for (std::size_t v = 0; v < row.size(); ++v) out.set(v, row[v] <= ExtCost(1.0));
    return out;
}

BitVector reach_set_two_pop(const ManipulationGraph& g, NodeId u, Group group) {
    require_two_pop_graph(g);
    const auto row = g.cost_row(CostModel::UnitEdge, u);
    const ExtCost limit(group == Group::A ? 2.0 : 1.0);
    BitVector out(row.size());
    for (std::size_t v = 0; v < row.size(); ++v) out.set(v, row[v] <= limit);
    return out;
}

}  // namespace stratclass
