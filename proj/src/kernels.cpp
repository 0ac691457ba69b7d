#include "stratclass/kernels.hpp"

#include <atomic>
#include <functional>
#include <queue>
#include <utility>

#include <omp.h>

namespace stratclass::kernels {
namespace {

std::atomic<int> g_threads{0};

// Parallel loops below this many inner operations run on one thread.
constexpr std::size_t kMinParallelWork = 1 << 14;

void dijkstra_row(const CsrAdjacency& adj, NodeId source, ExtCost* row) {
    const std::size_t n = adj.node_count();
    for (std::size_t v = 0; v < n; ++v) row[v] = ExtCost::infinite();
    std::vector<bool> done(n, false);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    row[source] = ExtCost(0.0);
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = true;
        for (std::size_t k = adj.offsets[u]; k < adj.offsets[u + 1]; ++k) {
            const NodeId v = adj.targets[k];
            const ExtCost candidate(d + adj.weights[k]);
            if (!done[v] && candidate < row[v]) {
                row[v] = candidate;
                heap.emplace(candidate.value(), v);
            }
        }
    }
}

void bfs_row(const CsrAdjacency& adj, NodeId source, ExtCost* row) {
    const std::size_t n = adj.node_count();
    for (std::size_t v = 0; v < n; ++v) row[v] = ExtCost::infinite();
    std::vector<NodeId> frontier{source};
    row[source] = ExtCost(0.0);
    double depth = 0.0;
    while (!frontier.empty()) {
        depth += 1.0;
        std::vector<NodeId> next;
        for (NodeId u : frontier) {
            for (std::size_t k = adj.offsets[u]; k < adj.offsets[u + 1]; ++k) {
                const NodeId v = adj.targets[k];
                if (row[v].is_infinite()) {
                    row[v] = ExtCost(depth);
                    next.push_back(v);
                }
            }
        }
        frontier = std::move(next);
    }
}

int threads_for(std::size_t work) {
    if (work < kMinParallelWork) return 1;
    return thread_count();
}

}  // namespace

void set_thread_count(int n) { g_threads.store(n > 0 ? n : 0); }

int thread_count() {
    const int n = g_threads.load();
    return n > 0 ? n : omp_get_max_threads();
}

std::vector<ExtCost> shortest_path_costs_serial(const CsrAdjacency& adj) {
    const std::size_t n = adj.node_count();
    std::vector<ExtCost> table(n * n);
    for (std::size_t s = 0; s < n; ++s) dijkstra_row(adj, static_cast<NodeId>(s), &table[s * n]);
    return table;
}

std::vector<ExtCost> shortest_path_costs(const CsrAdjacency& adj) {
    const std::size_t n = adj.node_count();
    std::vector<ExtCost> table(n * n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads_for(n * adj.targets.size()))
    for (std::ptrdiff_t s = 0; s < count; ++s) {
        dijkstra_row(adj, static_cast<NodeId>(s), &table[static_cast<std::size_t>(s) * n]);
    }
    return table;
}

std::vector<ExtCost> hop_costs_serial(const CsrAdjacency& adj) {
    const std::size_t n = adj.node_count();
    std::vector<ExtCost> table(n * n);
    for (std::size_t s = 0; s < n; ++s) bfs_row(adj, static_cast<NodeId>(s), &table[s * n]);
    return table;
}

std::vector<ExtCost> hop_costs(const CsrAdjacency& adj) {
    const std::size_t n = adj.node_count();
    std::vector<ExtCost> table(n * n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads_for(n * adj.targets.size()))
    for (std::ptrdiff_t s = 0; s < count; ++s) {
        bfs_row(adj, static_cast<NodeId>(s), &table[static_cast<std::size_t>(s) * n]);
    }
    return table;
}

std::vector<std::size_t> positive_counts_serial(std::span<const BitVector> positive_by_node,
                                                const BitVector& alive) {
    std::vector<std::size_t> out(positive_by_node.size());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = positive_by_node[v].count_and(alive);
    return out;
}

std::vector<std::size_t> positive_counts(std::span<const BitVector> positive_by_node,
                                         const BitVector& alive) {
    std::vector<std::size_t> out(positive_by_node.size());
    const auto count = static_cast<std::ptrdiff_t>(out.size());
    const std::size_t work = out.size() * alive.words().size() * 8;
#pragma omp parallel for schedule(static) num_threads(threads_for(work))
    for (std::ptrdiff_t v = 0; v < count; ++v) {
        out[static_cast<std::size_t>(v)] = positive_by_node[static_cast<std::size_t>(v)].count_and(alive);
    }
    return out;
}

std::vector<double> positive_weights_serial(std::span<const BitVector> positive_by_node,
                                            std::span<const double> weights) {
    std::vector<double> out(positive_by_node.size(), 0.0);
    for (std::size_t v = 0; v < out.size(); ++v) {
        double sum = 0.0;
        positive_by_node[v].for_each_set([&](std::size_t h) { sum += weights[h]; });
        out[v] = sum;
    }
    return out;
}

std::vector<double> positive_weights(std::span<const BitVector> positive_by_node,
                                     std::span<const double> weights) {
    std::vector<double> out(positive_by_node.size(), 0.0);
    const auto count = static_cast<std::ptrdiff_t>(out.size());
    const std::size_t work = out.size() * weights.size();
#pragma omp parallel for schedule(static) num_threads(threads_for(work))
    for (std::ptrdiff_t v = 0; v < count; ++v) {
        double sum = 0.0;
        positive_by_node[static_cast<std::size_t>(v)].for_each_set([&](std::size_t h) { sum += weights[h]; });
        out[static_cast<std::size_t>(v)] = sum;
    }
    return out;
}

}  // namespace stratclass::kernels
