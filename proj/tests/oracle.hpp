#pragma once

// Brute-force reference implementations used only by the tests. Nothing here
// calls into the library's cost tables or response code.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "stratclass/graph.hpp"
#include "stratclass/policies.hpp"

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Floyd-Warshall over the raw edge list.
inline std::vector<std::vector<double>> floyd(const stratclass::ManipulationGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& e : g.edges()) {
        d[e.from][e.to] = std::min(d[e.from][e.to], e.weight);
        if (!g.directed()) d[e.to][e.from] = std::min(d[e.to][e.from], e.weight);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

// Hop counts via Floyd-Warshall on unit weights.
inline std::vector<std::vector<double>> hops(const stratclass::ManipulationGraph& g) {
    std::vector<stratclass::Edge> unit = g.edges();
    for (auto& e : unit) e.weight = 1.0;
    return floyd(stratclass::ManipulationGraph(g.node_count(), g.directed(), unit));
}

// Enumerates every node; keeps the best (utility, value) pair, prefers u on
// a full tie, then the smallest id.
inline std::size_t best_response(const std::vector<double>& cost_row, const std::vector<double>& value, std::size_t u,
                                 double scale = 1.0) {
    std::optional<std::size_t> best;
    for (std::size_t v = 0; v < cost_row.size(); ++v) {
        if (cost_row[v] == kInf) continue;
        if (!best) {
            best = v;
            continue;
        }
        const double ub = value[*best] - scale * cost_row[*best];
        const double uv = value[v] - scale * cost_row[v];
        if (uv > ub || (uv == ub && value[v] > value[*best]) || (uv == ub && value[v] == value[*best] && v == u)) {
            best = v;
        }
    }
    return *best;
}

inline std::vector<double> values_of(const stratclass::DeterministicClassifier& h) {
    std::vector<double> v(h.node_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = h.positive(static_cast<stratclass::NodeId>(i)) ? 1.0 : 0.0;
    return v;
}

inline int strategic_loss(const std::vector<std::vector<double>>& cost, const stratclass::DeterministicClassifier& h,
                          std::size_t u, stratclass::Label y, double scale = 1.0) {
    const std::size_t v = best_response(cost[u], values_of(h), u, scale);
    return h.label(static_cast<stratclass::NodeId>(v)) != y ? 1 : 0;
}

// Classic perceptron on (z, y) pairs with the all-negative convention at w = 0.
inline std::vector<double> classic_perceptron(const std::vector<std::pair<std::vector<double>, int>>& examples,
                                              std::size_t d) {
    std::vector<double> w(d, 0.0);
    for (const auto& [z, y] : examples) {
        bool zero = true;
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            zero = zero && w[i] == 0.0;
            s += w[i] * z[i];
        }
        const int pred = zero ? -1 : (s >= 0.0 ? 1 : -1);
        if (pred != y)
            for (std::size_t i = 0; i < d; ++i) w[i] += y * z[i];
    }
    return w;
}

}  // namespace oracle
