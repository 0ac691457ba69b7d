#pragma once

#include <span>
#include <vector>

#include "stratclass/bit_vector.hpp"
#include "stratclass/graph.hpp"

// Data-parallel kernels. Every kernel has an OpenMP version and a `_serial`
// reference; both produce bit-identical results because each output entry is
// accumulated by a single thread in a fixed order.
namespace stratclass::kernels {

// Row-major n×n table of shortest-path weights (Dijkstra per source).
std::vector<ExtCost> shortest_path_costs(const CsrAdjacency& adj);
std::vector<ExtCost> shortest_path_costs_serial(const CsrAdjacency& adj);

// Row-major n×n table of hop counts (BFS per source).
std::vector<ExtCost> hop_costs(const CsrAdjacency& adj);
std::vector<ExtCost> hop_costs_serial(const CsrAdjacency& adj);

// out[v] = |positive_by_node[v] ∩ alive|.
std::vector<std::size_t> positive_counts(std::span<const BitVector> positive_by_node,
                                         const BitVector& alive);
std::vector<std::size_t> positive_counts_serial(std::span<const BitVector> positive_by_node,
                                                const BitVector& alive);

// out[v] = Σ_{h ∈ positive_by_node[v]} weights[h], summed in index order.
std::vector<double> positive_weights(std::span<const BitVector> positive_by_node,
                                     std::span<const double> weights);
std::vector<double> positive_weights_serial(std::span<const BitVector> positive_by_node,
                                            std::span<const double> weights);

// Sets the OpenMP worker count used by the parallel kernels and by
// Monte Carlo fan-out. n <= 0 restores the runtime default.
void set_thread_count(int n);
int thread_count();

}  // namespace stratclass::kernels
