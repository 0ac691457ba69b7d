#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stratclass {

using NodeId = std::uint32_t;

class GraphError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Non-negative extended real. Infinity is a flag, never a large float, so
// comparisons against an unreachable state are exact.
class ExtCost {
  public:
    constexpr ExtCost() = default;
    constexpr explicit ExtCost(double value) : value_(value) {}

    static constexpr ExtCost infinite() {
        ExtCost c;
        c.infinite_ = true;
        return c;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }
    // Precondition: finite.
    constexpr double value() const { return value_; }

    friend constexpr ExtCost operator+(ExtCost a, ExtCost b) {
        if (a.infinite_ || b.infinite_) return infinite();
        return ExtCost(a.value_ + b.value_);
    }

    friend constexpr bool operator==(ExtCost a, ExtCost b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

    friend constexpr std::weak_ordering operator<=>(ExtCost a, ExtCost b) {
        if (a.infinite_ && b.infinite_) return std::weak_ordering::equivalent;
        if (a.infinite_) return std::weak_ordering::greater;
        if (b.infinite_) return std::weak_ordering::less;
        if (a.value_ < b.value_) return std::weak_ordering::less;
        if (a.value_ > b.value_) return std::weak_ordering::greater;
        return std::weak_ordering::equivalent;
    }

  private:
    double value_ = 0.0;
    bool infinite_ = false;
};

std::string to_string(ExtCost c);

enum class CostModel {
    ShortestPath,  // sum of weights along the cheapest path
    FreeEdge,      // one hop is free, two or more hops are impossible
    UnitEdge,      // hop count; only valid on unit-cost graphs
};

std::string_view to_string(CostModel m);

struct Edge {
    NodeId from = 0;
    NodeId to = 0;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct DegreeStats {
    int max_degree = 0;      // Δ
    int min_degree = 0;      // δ
    int max_out_degree = 0;  // Δ_out; equals Δ on undirected graphs
};

// Compressed out-adjacency. Undirected edges appear in both directions.
struct CsrAdjacency {
    std::vector<std::size_t> offsets;  // size n + 1
    std::vector<NodeId> targets;
    std::vector<double> weights;

    std::size_t node_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

namespace detail {
struct CostCache;
}

// Immutable manipulation graph. Copies share the memoized cost tables.
class ManipulationGraph {
  public:
    // Throws GraphError on out-of-range endpoints, self-loops, duplicate
    // edges, or weights outside [0, 1].
    ManipulationGraph(std::size_t n, bool directed, std::vector<Edge> edges);

    std::size_t node_count() const { return n_; }
    bool directed() const { return directed_; }
    // True iff every edge weight is exactly 1.
    bool unit_cost() const { return unit_cost_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const CsrAdjacency& adjacency() const { return adjacency_; }
    std::span<const NodeId> out_neighbors(NodeId u) const;

    ExtCost cost(CostModel model, NodeId u, NodeId v) const;
    // Row u of the memoized all-pairs table for `model`.
    std::span<const ExtCost> cost_row(CostModel model, NodeId u) const;

    // Closed neighborhood (out-neighborhood when directed), sorted.
    // hops must be 1 or 2.
    std::vector<NodeId> neighborhood(NodeId u, int hops = 1) const;

    DegreeStats degree_stats() const;

  private:
    void check_node(NodeId u) const;

    std::size_t n_ = 0;
    bool directed_ = false;
    bool unit_cost_ = true;
    std::vector<Edge> edges_;
    CsrAdjacency adjacency_;
    std::shared_ptr<detail::CostCache> cache_;
};

// Unweighted graph on the same nodes with an edge (u, v) iff u != v and the
// shortest-path cost from u to v is at most 1.
ManipulationGraph expand(const ManipulationGraph& g);

// Builders for the standard instances. Node 0 is the star center.
ManipulationGraph star_graph(int leaves, double weight = 1.0);
ManipulationGraph directed_star_graph(int leaves, bool leaf_to_center);
ManipulationGraph complete_graph(int n);
ManipulationGraph path_graph(int n, double weight);

struct RandomGraphParams {
    int n = 10;
    double edge_probability = 0.2;
    double min_weight = 1.0;
    double max_weight = 1.0;
    // 0 means unbounded.
    int max_degree = 0;
};

// Connected random graph: a random spanning tree, then each remaining pair
// independently with edge_probability, subject to max_degree.
ManipulationGraph random_graph(const RandomGraphParams& params, std::uint64_t seed);

// Edge-list text format:
//   directed|undirected
//   nodes <n>
//   <u> <v> <w>    (one per line, w in [0,1]; '#' starts a comment)
ManipulationGraph parse_graph(std::istream& in);
ManipulationGraph load_graph(const std::string& path);
void write_graph(std::ostream& out, const ManipulationGraph& g);

// Textual graph spec used by configs:
//   star:<Δ>[:<w>]  complete:<n>  path:<n>:<w>  file:<path>
//   random:<n>:<p>:<wmin>:<wmax>[:<max_degree>]   (seeded by `seed`)
ManipulationGraph build_graph(std::string_view spec, std::uint64_t seed = 0);

}  // namespace stratclass
