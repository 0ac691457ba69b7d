#include "stratclass/graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "stratclass/kernels.hpp"
#include "stratclass/rng.hpp"

namespace stratclass {

namespace detail {
struct CostCache {
    std::array<std::once_flag, 3> once;
    std::array<std::vector<ExtCost>, 3> tables;
};
}  // namespace detail

namespace {

std::size_t model_slot(CostModel m) { return static_cast<std::size_t>(m); }

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
    const auto* end = s.data() + s.size();
    auto res = std::from_chars(s.data(), end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

}  // namespace

std::string to_string(ExtCost c) { return c.is_infinite() ? "inf" : format_double(c.value()); }

std::string_view to_string(CostModel m) {
    switch (m) {
        case CostModel::ShortestPath: return "shortest-path";
        case CostModel::FreeEdge: return "free-edge";
        case CostModel::UnitEdge: return "unit-edge";
    }
    return "?";
}

ManipulationGraph::ManipulationGraph(std::size_t n, bool directed, std::vector<Edge> edges)
    : n_(n), directed_(directed), edges_(std::move(edges)), cache_(std::make_shared<detail::CostCache>()) {
    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<std::vector<std::pair<NodeId, double>>> out(n_);
    for (const Edge& e : edges_) {
        if (e.from >= n_ || e.to >= n_) {
            throw GraphError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                             ") references a node outside [0," + std::to_string(n_) + ")");
        }
        if (e.from == e.to) throw GraphError("self-loop at node " + std::to_string(e.from));
        if (!(e.weight >= 0.0 && e.weight <= 1.0)) {
            throw GraphError("edge weight " + format_double(e.weight) + " outside [0,1]");
        }
        auto key = directed_ ? std::pair{e.from, e.to} : std::pair{std::min(e.from, e.to), std::max(e.from, e.to)};
        if (!seen.insert(key).second) {
            throw GraphError("duplicate edge (" + std::to_string(e.from) + "," + std::to_string(e.to) + ")");
        }
        if (e.weight != 1.0) unit_cost_ = false;
        out[e.from].emplace_back(e.to, e.weight);
        if (!directed_) out[e.to].emplace_back(e.from, e.weight);
    }
    adjacency_.offsets.assign(n_ + 1, 0);
    for (std::size_t u = 0; u < n_; ++u) {
        std::sort(out[u].begin(), out[u].end());
        adjacency_.offsets[u + 1] = adjacency_.offsets[u] + out[u].size();
        for (const auto& [v, w] : out[u]) {
            adjacency_.targets.push_back(v);
            adjacency_.weights.push_back(w);
        }
    }
}

void ManipulationGraph::check_node(NodeId u) const {
    if (u >= n_) throw GraphError("node " + std::to_string(u) + " out of range");
}

std::span<const NodeId> ManipulationGraph::out_neighbors(NodeId u) const {
    check_node(u);
    return std::span<const NodeId>(adjacency_.targets).subspan(
        adjacency_.offsets[u], adjacency_.offsets[u + 1] - adjacency_.offsets[u]);
}

std::span<const ExtCost> ManipulationGraph::cost_row(CostModel model, NodeId u) const {
    check_node(u);
    if (model == CostModel::UnitEdge && !unit_cost_) {
        throw GraphError("unit-edge cost requested on a graph with non-unit weights");
    }
    const std::size_t slot = model_slot(model);
    std::call_once(cache_->once[slot], [&] {
        auto& table = cache_->tables[slot];
        switch (model) {
            case CostModel::ShortestPath: table = kernels::shortest_path_costs(adjacency_); break;
            case CostModel::UnitEdge: table = kernels::hop_costs(adjacency_); break;
            case CostModel::FreeEdge:
                table.assign(n_ * n_, ExtCost::infinite());
                for (std::size_t s = 0; s < n_; ++s) {
                    table[s * n_ + s] = ExtCost(0.0);
                    for (std::size_t k = adjacency_.offsets[s]; k < adjacency_.offsets[s + 1]; ++k) {
                        table[s * n_ + adjacency_.targets[k]] = ExtCost(0.0);
                    }
                }
                break;
        }
    });
    return std::span<const ExtCost>(cache_->tables[slot]).subspan(std::size_t{u} * n_, n_);
}

ExtCost ManipulationGraph::cost(CostModel model, NodeId u, NodeId v) const {
    check_node(v);
    return cost_row(model, u)[v];
}

std::vector<NodeId> ManipulationGraph::neighborhood(NodeId u, int hops) const {
    check_node(u);
    if (hops != 1 && hops != 2) throw GraphError("neighborhood hops must be 1 or 2");
    std::vector<bool> in(n_, false);
    in[u] = true;
    for (NodeId v : out_neighbors(u)) in[v] = true;
    if (hops == 2) {
        for (NodeId v : out_neighbors(u)) {
            for (NodeId w : out_neighbors(v)) in[w] = true;
        }
    }
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < n_; ++v) {
        if (in[v]) out.push_back(static_cast<NodeId>(v));
    }
    return out;
}

DegreeStats ManipulationGraph::degree_stats() const {
    DegreeStats stats;
    if (n_ == 0) return stats;
    std::vector<std::set<NodeId>> touching(n_);
    std::vector<int> out_degree(n_, 0);
    for (const Edge& e : edges_) {
        touching[e.from].insert(e.to);
        touching[e.to].insert(e.from);
        ++out_degree[e.from];
        if (!directed_) ++out_degree[e.to];
    }
    stats.min_degree = static_cast<int>(touching[0].size());
    for (std::size_t u = 0; u < n_; ++u) {
        const int d = static_cast<int>(touching[u].size());
        stats.max_degree = std::max(stats.max_degree, d);
        stats.min_degree = std::min(stats.min_degree, d);
        stats.max_out_degree = std::max(stats.max_out_degree, out_degree[u]);
    }
    return stats;
}

ManipulationGraph expand(const ManipulationGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        const auto row = g.cost_row(CostModel::ShortestPath, static_cast<NodeId>(u));
        for (std::size_t v = g.directed() ? 0 : u + 1; v < n; ++v) {
            if (v == u) continue;
            if (row[v] <= ExtCost(1.0)) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), 1.0});
        }
    }
    return ManipulationGraph(n, g.directed(), std::move(edges));
}

ManipulationGraph star_graph(int leaves, double weight) {
    if (leaves < 1) throw GraphError("star needs at least one leaf");
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<NodeId>(i), weight});
    return ManipulationGraph(static_cast<std::size_t>(leaves) + 1, false, std::move(edges));
}

ManipulationGraph directed_star_graph(int leaves, bool leaf_to_center) {
    if (leaves < 1) throw GraphError("star needs at least one leaf");
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) {
        const auto leaf = static_cast<NodeId>(i);
        edges.push_back(leaf_to_center ? Edge{leaf, 0, 1.0} : Edge{0, leaf, 1.0});
    }
    return ManipulationGraph(static_cast<std::size_t>(leaves) + 1, true, std::move(edges));
}

ManipulationGraph complete_graph(int n) {
    if (n < 1) throw GraphError("complete graph needs at least one node");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), 1.0});
    }
    return ManipulationGraph(static_cast<std::size_t>(n), false, std::move(edges));
}

ManipulationGraph path_graph(int n, double weight) {
    if (n < 1) throw GraphError("path needs at least one node");
    std::vector<Edge> edges;
    for (int u = 0; u + 1 < n; ++u) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(u + 1), weight});
    return ManipulationGraph(static_cast<std::size_t>(n), false, std::move(edges));
}

ManipulationGraph random_graph(const RandomGraphParams& params, std::uint64_t seed) {
    if (params.n < 1) throw GraphError("random graph needs at least one node");
    if (params.min_weight > params.max_weight) throw GraphError("random graph weight range is empty");
    if (params.max_degree == 1 && params.n > 2) throw GraphError("max_degree 1 cannot connect more than 2 nodes");
    Rng rng(seed);
    const auto n = static_cast<std::size_t>(params.n);
    const std::size_t cap = params.max_degree > 0 ? static_cast<std::size_t>(params.max_degree) : n;
    auto draw_weight = [&] {
        if (params.min_weight == params.max_weight) return params.min_weight;
        return std::uniform_real_distribution<double>(params.min_weight, params.max_weight)(rng);
    };

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> degree(n, 0);
    std::set<std::pair<NodeId, NodeId>> present;
    std::vector<Edge> edges;
    auto add = [&](NodeId a, NodeId b) {
        edges.push_back({a, b, draw_weight()});
        ++degree[a];
        ++degree[b];
        present.insert({std::min(a, b), std::max(a, b)});
    };
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<NodeId> open;
        for (std::size_t j = 0; j < i; ++j) {
            if (degree[order[j]] < cap) open.push_back(order[j]);
        }
        add(order[i], open[uniform_index(rng, open.size())]);
    }
    for (NodeId a = 0; a < n; ++a) {
        for (NodeId b = a + 1; b < n; ++b) {
            const double coin = uniform_real(rng);
            if (coin >= params.edge_probability || present.count({a, b})) continue;
            if (degree[a] >= cap || degree[b] >= cap) continue;
            add(a, b);
        }
    }
    return ManipulationGraph(n, false, std::move(edges));
}

ManipulationGraph parse_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    int header = 0;
    bool directed = false;
    std::size_t n = 0;
    std::vector<Edge> edges;
    auto fail = [&](const std::string& what) {
        throw GraphError("graph file line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body(line);
        if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = trim(body);
        if (body.empty()) continue;
        const auto fields = split_ws(body);
        if (header == 0) {
            if (fields.size() != 1 || (fields[0] != "directed" && fields[0] != "undirected")) {
                fail("expected 'directed' or 'undirected'");
            }
            directed = fields[0] == "directed";
            ++header;
        } else if (header == 1) {
            if (fields.size() != 2 || fields[0] != "nodes" || !parse_number(fields[1], n)) {
                fail("expected 'nodes <n>'");
            }
            ++header;
        } else {
            Edge e;
            if (fields.size() != 3 || !parse_number(fields[0], e.from) || !parse_number(fields[1], e.to) ||
                !parse_number(fields[2], e.weight)) {
                fail("expected '<u> <v> <w>'");
            }
            edges.push_back(e);
        }
    }
    if (header < 2) throw GraphError("graph file is missing its header");
    return ManipulationGraph(n, directed, std::move(edges));
}

ManipulationGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open graph file '" + path + "'");
    return parse_graph(in);
}

void write_graph(std::ostream& out, const ManipulationGraph& g) {
    out << (g.directed() ? "directed" : "undirected") << '\n';
    out << "nodes " << g.node_count() << '\n';
    for (const Edge& e : g.edges()) out << e.from << ' ' << e.to << ' ' << format_double(e.weight) << '\n';
}

ManipulationGraph build_graph(std::string_view spec, std::uint64_t seed) {
    const auto colon = spec.find(':');
    const std::string_view kind = spec.substr(0, colon);
    std::vector<std::string_view> args;
    if (colon != std::string_view::npos) {
        std::string_view rest = spec.substr(colon + 1);
        if (kind == "file") return load_graph(std::string(rest));
        while (true) {
            const auto next = rest.find(':');
            args.push_back(rest.substr(0, next));
            if (next == std::string_view::npos) break;
            rest = rest.substr(next + 1);
        }
    }
    auto bad = [&] { return GraphError("malformed graph spec '" + std::string(spec) + "'"); };
    auto int_arg = [&](std::size_t i) {
        int x = 0;
        if (i >= args.size() || !parse_number(args[i], x)) throw bad();
        return x;
    };
    auto real_arg = [&](std::size_t i) {
        double x = 0;
        if (i >= args.size() || !parse_number(args[i], x)) throw bad();
        return x;
    };
    if (kind == "star") {
        if (args.size() == 1) return star_graph(int_arg(0));
        if (args.size() == 2) return star_graph(int_arg(0), real_arg(1));
    } else if (kind == "complete" && args.size() == 1) {
        return complete_graph(int_arg(0));
    } else if (kind == "path" && args.size() == 2) {
        return path_graph(int_arg(0), real_arg(1));
    } else if (kind == "random" && (args.size() == 4 || args.size() == 5)) {
        RandomGraphParams p;
        p.n = int_arg(0);
        p.edge_probability = real_arg(1);
        p.min_weight = real_arg(2);
        p.max_weight = real_arg(3);
        if (args.size() == 5) p.max_degree = int_arg(4);
        return random_graph(p, seed);
    }
    throw bad();
}

}  // namespace stratclass
