#include "stratclass/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "stratclass/kernels.hpp"

namespace stratclass {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
    return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
    }
    return out;
}

std::vector<double> parse_vector(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(parse_double(key, trim(cell)));
    if (out.empty()) throw ConfigError(key + ": empty vector");
    return out;
}

CostModel parse_cost_model(const std::string& s) {
    if (s == "shortest-path") return CostModel::ShortestPath;
    if (s == "free-edge") return CostModel::FreeEdge;
    if (s == "unit-edge") return CostModel::UnitEdge;
    throw ConfigError("cost_model: unknown value '" + s + "'");
}

bool contains(const std::vector<std::string>& xs, const std::string& x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
}

CommitmentShape learner_shape(const std::string& learner) {
    if (learner == "exp3" || learner == "block-reduction" || learner == "adaptive-explore") {
        return CommitmentShape::Mixed;
    }
    if (learner == "constant-fraction" || learner == "random-fraction" || learner == "embedded-weighted-majority") {
        return CommitmentShape::Fractional;
    }
    return CommitmentShape::Deterministic;
}

std::vector<Agent> parse_sequence(const std::string& path, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw ConfigError("sequence: cannot open " + path);
    std::vector<Agent> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        std::istringstream row(line);
        long long u = -1;
        int y = 0;
        if (!(row >> u >> y) || u < 0 || static_cast<std::size_t>(u) >= n || (y != 1 && y != -1)) {
            throw ConfigError("sequence line " + std::to_string(lineno) + ": expected '<node> <+1|-1>'");
        }
        out.push_back(Agent{static_cast<NodeId>(u), y > 0 ? Label::Positive : Label::Negative, std::nullopt});
    }
    if (out.empty()) throw ConfigError("sequence: no agents in " + path);
    return out;
}

linear::LinearStream build_stream(const std::string& spec, std::uint64_t seed, std::size_t rounds) {
    if (spec.rfind("file:", 0) == 0) {
        try {
            return linear::load_stream(spec.substr(5));
        } catch (const linear::LinearError& e) {
            throw ConfigError(std::string("stream: ") + e.what());
        }
    }
    // margin:<d>:<margin>:<noise>
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ':')) parts.push_back(cell);
    if (parts.size() != 4 || parts[0] != "margin") throw ConfigError("stream: expected file:<path> or margin:<d>:<m>:<noise>");
    const auto d = parse_uint("stream", parts[1]);
    const double m = parse_double("stream", parts[2]);
    const double noise = parse_double("stream", parts[3]);
    if (d == 0 || m < 0 || m > 1 || noise < 0 || noise > 1) throw ConfigError("stream: parameters out of range");
    return linear::margin_stream(d, rounds, m, 1.0, noise, derive_seed(seed, "stream"));
}

}  // namespace

const std::vector<std::string>& learner_names() {
    static const std::vector<std::string> names = {
        "vanilla-halving",   "br-halving",        "biased-majority",          "improved-biased-majority",
        "biased-weighted-majority", "two-pop-weighted-majority", "exp3",       "block-reduction",
        "adaptive-explore",  "constant-fraction", "random-fraction",          "embedded-weighted-majority",
    };
    return names;
}

const std::vector<std::string>& adversary_names() {
    static const std::vector<std::string> names = {
        "fixed",         "det-lower-bound",   "det-lower-bound-realizable", "frac-free-edge", "frac-weighted",
        "greedy-realizable", "random-realizable", "random-agnostic",    "star-mixture",
    };
    return names;
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "protocol") {
        if (value != "deterministic" && value != "fractional" && value != "randomized" && value != "two-pop" &&
            value != "perceptron") {
            throw ConfigError("protocol: unknown value '" + value + "'");
        }
        cfg.protocol = value;
    } else if (key == "cost_model") {
        parse_cost_model(value);
        cfg.cost_model = value;
    } else if (key == "graph") {
        cfg.graph = value;
    } else if (key == "hypotheses") {
        cfg.hypotheses = value;
    } else if (key == "hypothesis_limit") {
        cfg.hypothesis_limit = parse_uint(key, value);
    } else if (key == "learner") {
        if (!contains(learner_names(), value)) throw ConfigError("learner: unknown value '" + value + "'");
        cfg.learner = value;
    } else if (key == "gamma") {
        cfg.gamma = parse_double(key, value);
    } else if (key == "eta") {
        cfg.eta = parse_double(key, value);
    } else if (key == "blocks") {
        cfg.blocks = parse_uint(key, value);
    } else if (key == "explore") {
        cfg.explore = parse_double(key, value);
    } else if (key == "fraction") {
        cfg.fraction = parse_double(key, value);
    } else if (key == "adversary") {
        if (!contains(adversary_names(), value)) throw ConfigError("adversary: unknown value '" + value + "'");
        cfg.adversary = value;
    } else if (key == "sequence") {
        cfg.sequence = value;
    } else if (key == "target") {
        cfg.target = parse_uint(key, value);
    } else if (key == "noise") {
        cfg.noise = parse_double(key, value);
    } else if (key == "positive_rate") {
        cfg.positive_rate = parse_double(key, value);
    } else if (key == "epsilon") {
        cfg.epsilon = parse_double(key, value);
    } else if (key == "T") {
        cfg.rounds = parse_uint(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_uint(key, value);
    } else if (key == "repetitions") {
        cfg.repetitions = parse_uint(key, value);
    } else if (key == "beta") {
        cfg.beta = parse_double(key, value);
    } else if (key == "name") {
        if (value.empty() || value.find('/') != std::string::npos) throw ConfigError("name: must be a plain file stem");
        cfg.name = value;
    } else if (key == "stream") {
        cfg.stream = value;
    } else if (key == "alpha") {
        cfg.alpha = parse_double(key, value);
    } else if (key == "w_star") {
        cfg.w_star = parse_vector(key, value);
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (contains(seen, key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        seen.push_back(key);
        try {
            set_config_value(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    ExperimentConfig cfg = parse_config(in);
    // Relative file references are relative to the config's directory.
    const std::filesystem::path dir = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        const std::filesystem::path fp(p);
        return fp.is_absolute() || dir.empty() ? p : (dir / fp).string();
    };
    if (!cfg.sequence.empty()) cfg.sequence = resolve(cfg.sequence);
    for (std::string* spec : {&cfg.graph, &cfg.hypotheses, &cfg.stream}) {
        if (spec->rfind("file:", 0) == 0) *spec = "file:" + resolve(spec->substr(5));
    }
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.rounds == 0) throw ConfigError("T must be a positive integer");
    if (cfg.repetitions == 0) throw ConfigError("repetitions must be at least 1");
    if (cfg.protocol == "perceptron") {
        if (cfg.stream.empty()) throw ConfigError("perceptron protocol needs stream");
        if (cfg.alpha < 0) throw ConfigError("alpha must be non-negative");
        return;
    }
    if (cfg.graph.empty()) throw ConfigError("graph is required");
    if (cfg.learner.empty()) throw ConfigError("learner is required");
    if (cfg.adversary.empty()) throw ConfigError("adversary is required");
    const CommitmentShape want = cfg.protocol == "fractional"   ? CommitmentShape::Fractional
                                 : cfg.protocol == "randomized" ? CommitmentShape::Mixed
                                                                : CommitmentShape::Deterministic;
    if (learner_shape(cfg.learner) != want) {
        throw ConfigError("learner " + cfg.learner + " does not fit protocol " + cfg.protocol);
    }
    if (cfg.protocol == "two-pop") {
        if (!cfg.beta) throw ConfigError("two-pop protocol requires beta");
        if (*cfg.beta < 0 || *cfg.beta > 1) throw ConfigError("beta must lie in [0,1]");
        if (cfg.learner != "two-pop-weighted-majority" && cfg.learner != "biased-weighted-majority" &&
            cfg.learner != "biased-majority") {
            throw ConfigError("two-pop protocol needs a deterministic graph learner");
        }
    } else if (cfg.learner == "two-pop-weighted-majority") {
        throw ConfigError("two-pop-weighted-majority needs protocol = two-pop");
    }
    if (cfg.protocol == "fractional" && cfg.cost_model == "unit-edge") {
        throw ConfigError("fractional protocol needs cost_model shortest-path or free-edge");
    }
    const bool frac_adversary = cfg.adversary == "frac-free-edge" || cfg.adversary == "frac-weighted";
    if (frac_adversary != (cfg.protocol == "fractional") && cfg.adversary != "fixed" &&
        cfg.adversary.rfind("random-", 0) != 0 && cfg.adversary != "star-mixture") {
        throw ConfigError("adversary " + cfg.adversary + " does not fit protocol " + cfg.protocol);
    }
    if ((cfg.adversary == "det-lower-bound" || cfg.adversary == "det-lower-bound-realizable" ||
         cfg.adversary == "greedy-realizable") &&
        cfg.protocol != "deterministic") {
        throw ConfigError("adversary " + cfg.adversary + " needs protocol = deterministic");
    }
    if (cfg.adversary == "fixed" && cfg.sequence.empty()) throw ConfigError("adversary = fixed needs sequence");
    if (!(cfg.gamma > 0 && cfg.gamma < 1)) throw ConfigError("gamma must lie in (0,1)");
    if (cfg.noise < 0 || cfg.noise > 1) throw ConfigError("noise must lie in [0,1]");
    if (cfg.positive_rate < 0 || cfg.positive_rate > 1) throw ConfigError("positive_rate must lie in [0,1]");
    if (cfg.fraction < 0 || cfg.fraction > 1) throw ConfigError("fraction must lie in [0,1]");
    if (cfg.epsilon <= 0 || cfg.epsilon >= 0.5) throw ConfigError("epsilon must lie in (0,0.5)");
}

PreparedExperiment prepare(const ExperimentConfig& cfg) {
    validate(cfg);
    PreparedExperiment ex;
    ex.config = cfg;
    if (cfg.protocol == "perceptron") {
        ex.stream = build_stream(cfg.stream, cfg.seed, cfg.rounds);
        if (ex.stream.size() != cfg.rounds) {
            throw ConfigError("stream has " + std::to_string(ex.stream.size()) + " examples but T = " +
                              std::to_string(cfg.rounds));
        }
        if (ex.config.w_star.empty()) {
            ex.config.w_star.assign(ex.stream.dimension, 0.0);
            ex.config.w_star[0] = 1.0;
        }
        if (ex.config.w_star.size() != ex.stream.dimension) throw ConfigError("w_star dimension mismatch");
        return ex;
    }
    const CostModel model = parse_cost_model(cfg.cost_model);
    if (cfg.protocol == "deterministic") ex.protocol = Protocol::deterministic(model);
    if (cfg.protocol == "fractional") ex.protocol = Protocol::fractional(model);
    if (cfg.protocol == "randomized") ex.protocol = Protocol::randomized(model);
    if (cfg.protocol == "two-pop") ex.protocol = Protocol::two_population(*cfg.beta);

    try {
        ex.graph = std::make_shared<const ManipulationGraph>(build_graph(cfg.graph, derive_seed(cfg.seed, "graph")));
        HypothesisClass hc = build_hypotheses(cfg.hypotheses, *ex.graph, derive_seed(cfg.seed, "hypotheses"));
        if (cfg.hypothesis_limit > 0) {
            if (cfg.hypothesis_limit > hc.size()) throw ConfigError("hypothesis_limit exceeds |H|");
            hc = hc.prefix(cfg.hypothesis_limit);
        }
        ex.hypotheses = std::make_shared<const HypothesisClass>(std::move(hc));
    } catch (const GraphError& e) {
        throw ConfigError(e.what());
    } catch (const PolicyError& e) {
        throw ConfigError(e.what());
    }
    const bool weighted = !ex.graph->unit_cost() && model == CostModel::ShortestPath;
    ex.learner_graph = weighted ? std::make_shared<const ManipulationGraph>(expand(*ex.graph)) : ex.graph;
    if (ex.protocol.kind == Protocol::Kind::TwoPopulation && (!ex.graph->unit_cost() || ex.graph->directed())) {
        throw ConfigError("two-pop protocol needs a unit-cost undirected graph");
    }
    if (cfg.adversary == "fixed") ex.fixed_sequence = parse_sequence(cfg.sequence, ex.graph->node_count());
    if ((cfg.adversary == "random-realizable" || cfg.adversary == "random-agnostic") &&
        cfg.target >= ex.hypotheses->size()) {
        throw ConfigError("target index exceeds |H|");
    }
    return ex;
}

std::unique_ptr<Learner> make_learner(const PreparedExperiment& ex, std::uint64_t seed) {
    const auto& cfg = ex.config;
    const ManipulationGraph& g = *ex.learner_graph;
    const HypothesisClass& hc = *ex.hypotheses;
    const CostModel model = ex.protocol.model;
    const std::string& name = cfg.learner;
    if (name == "vanilla-halving") return make_vanilla_halving(*ex.graph, hc, model);
    if (name == "br-halving") return make_br_halving(*ex.graph, hc, model);
    if (name == "biased-majority") return std::make_unique<BiasedMajority>(g, hc);
    if (name == "improved-biased-majority") return make_improved_biased_majority(g, hc);
    if (name == "biased-weighted-majority") return make_biased_weighted_majority(g, hc, cfg.gamma);
    if (name == "two-pop-weighted-majority") return make_two_pop_weighted_majority(g, hc, *cfg.beta, cfg.gamma);
    const double eta = cfg.eta;
    if (name == "exp3") return make_exp3(hc, eta > 0 ? eta : default_exp3_rate(cfg.rounds, hc.size()));
    if (name == "block-reduction") {
        return std::make_unique<BlockReduction>(*ex.graph, hc, cfg.rounds, cfg.blocks, eta,
                                                derive_seed(seed, "probe-schedule"), model);
    }
    if (name == "adaptive-explore") {
        return std::make_unique<AdaptiveExplore>(*ex.graph, hc, cfg.rounds, eta, cfg.explore, model);
    }
    if (name == "constant-fraction") return make_constant_fraction(g.node_count(), cfg.fraction);
    if (name == "random-fraction") return make_random_fraction(g.node_count(), derive_seed(seed, "learner"));
    if (name == "embedded-weighted-majority") {
        return make_embedded_fractional(make_biased_weighted_majority(g, hc, cfg.gamma));
    }
    throw ConfigError("unknown learner " + name);
}

std::unique_ptr<Adversary> make_adversary(const PreparedExperiment& ex, std::uint64_t seed) {
    const auto& cfg = ex.config;
    const ManipulationGraph& g = *ex.graph;
    const std::uint64_t s = derive_seed(seed, "adversary");
    const CostModel model = ex.protocol.kind == Protocol::Kind::TwoPopulation ? CostModel::UnitEdge : ex.protocol.model;
    try {
        if (cfg.adversary == "fixed") {
            std::vector<Agent> agents;
            agents.reserve(cfg.rounds);
            for (std::size_t t = 0; t < cfg.rounds; ++t) agents.push_back(ex.fixed_sequence[t % ex.fixed_sequence.size()]);
            return make_fixed(std::move(agents));
        }
        if (cfg.adversary == "det-lower-bound") return make_det_lower_bound(g);
        if (cfg.adversary == "det-lower-bound-realizable") return make_det_lower_bound_realizable(g);
        if (cfg.adversary == "frac-free-edge") return make_frac_free_edge(g);
        if (cfg.adversary == "frac-weighted") return make_frac_weighted(g, cfg.epsilon);
        if (cfg.adversary == "greedy-realizable") return make_greedy_realizable(g, *ex.hypotheses, model);
        const auto& target = (*ex.hypotheses)[cfg.target];
        if (cfg.adversary == "random-realizable") {
            return make_fixed(random_realizable_sequence(g, model, target, cfg.rounds, s, cfg.positive_rate));
        }
        if (cfg.adversary == "random-agnostic") {
            return make_fixed(random_agnostic_sequence(g, model, target, cfg.rounds, s, cfg.noise, cfg.positive_rate));
        }
        if (cfg.adversary == "star-mixture") {
            return make_fixed(star_mixture_sequence(static_cast<int>(g.node_count()) - 1, cfg.rounds, s));
        }
    } catch (const AdversaryError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown adversary " + cfg.adversary);
}

Transcript run_once(const PreparedExperiment& ex, std::uint64_t seed) {
    auto learner = make_learner(ex, seed);
    auto adversary = make_adversary(ex, seed);
    return run(ex.protocol, *ex.graph, *ex.hypotheses, *learner, *adversary, ex.config.rounds, seed);
}

MonteCarloResult run_experiment(const PreparedExperiment& ex) {
    // Build once up front so configuration problems surface before fan-out.
    make_learner(ex, ex.config.seed);
    make_adversary(ex, ex.config.seed);
    return monte_carlo([&](std::uint64_t s) { return run_once(ex, s); }, ex.config.repetitions, ex.config.seed);
}

std::optional<TheoreticalBound> theoretical_bound(const PreparedExperiment& ex, double mean_opt) {
    const auto& cfg = ex.config;
    const auto stats = ex.learner_graph->degree_stats();
    const int delta = ex.learner_graph->directed() ? stats.max_out_degree : stats.max_degree;
    const double d = delta;
    const double log_h = std::log(static_cast<double>(ex.hypotheses->size()));
    if (cfg.learner == "biased-majority" || cfg.learner == "improved-biased-majority") {
        return TheoreticalBound{"(delta+2)*ln|H|", (d + 2.0) * log_h};
    }
    if (cfg.learner == "biased-weighted-majority" || cfg.learner == "embedded-weighted-majority") {
        if (ex.protocol.kind == Protocol::Kind::TwoPopulation) return std::nullopt;
        return TheoreticalBound{"e*(delta+2)*(ln|H|+OPT)", std::numbers::e * (d + 2.0) * (log_h + mean_opt)};
    }
    if (cfg.learner == "two-pop-weighted-majority") {
        return TheoreticalBound{"e*min(delta+1+1/beta,delta^2+2)*(ln|H|+OPT)",
                                std::numbers::e * two_pop_denominator(delta, *cfg.beta) * (log_h + mean_opt)};
    }
    return std::nullopt;
}

namespace {

void write_stat(std::ostream& out, const std::string& key, const Stat& s) {
    out << "mean_" << key << " = " << format_number(s.mean) << '\n';
    out << "sd_" << key << " = " << format_number(s.stddev) << '\n';
    out << "ci95_" << key << " = " << format_number(s.half_width) << '\n';
}

}  // namespace

void write_summary(std::ostream& out, const PreparedExperiment& ex, const MonteCarloSummary& s) {
    const auto& cfg = ex.config;
    const auto stats = ex.learner_graph->degree_stats();
    out << "seed = " << s.seed << '\n';
    out << "protocol = " << ex.protocol.name() << '\n';
    out << "learner = " << cfg.learner << '\n';
    out << "adversary = " << cfg.adversary << '\n';
    out << "T = " << cfg.rounds << '\n';
    out << "repetitions = " << s.repetitions << '\n';
    out << "nodes = " << ex.graph->node_count() << '\n';
    out << "delta = " << stats.max_degree << '\n';
    if (ex.graph->directed()) out << "delta_out = " << stats.max_out_degree << '\n';
    out << "hypotheses = " << ex.hypotheses->size() << '\n';
    if (cfg.beta) out << "beta = " << format_number(*cfg.beta) << '\n';
    write_stat(out, "cum_loss", s.cumulative_loss);
    write_stat(out, "mistakes", s.mistakes);
    write_stat(out, "opt", s.opt);
    write_stat(out, "regret", s.regret);
    if (const auto b = theoretical_bound(ex, s.opt.mean)) {
        out << "bound_formula = " << b->formula << '\n';
        out << "bound = " << format_number(b->value) << '\n';
        out << "within_bound = " << (s.mistakes.mean <= b->value ? "true" : "false") << '\n';
    }
}

PerceptronSummary run_perceptron_experiment(const PreparedExperiment& ex) {
    const auto& cfg = ex.config;
    const double r = ex.stream.radius();
    const double wn = linear::norm(cfg.w_star);
    const std::size_t blocks = cfg.blocks > 0 ? cfg.blocks : linear::default_perceptron_blocks(cfg.rounds, r, wn);
    PerceptronSummary s;
    s.repetitions = cfg.repetitions;
    s.runs.resize(cfg.repetitions);
    const auto count = static_cast<std::ptrdiff_t>(cfg.repetitions);
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::thread_count())
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        s.runs[static_cast<std::size_t>(i)] = linear::strategic_perceptron_run(
            ex.stream, cfg.alpha, blocks, repetition_seed(cfg.seed, static_cast<std::size_t>(i)));
    }
    std::vector<double> mistakes;
    for (const auto& run : s.runs) mistakes.push_back(static_cast<double>(run.mistakes));
    s.mistakes = summarize(mistakes);
    s.hinge = linear::hinge_loss(cfg.w_star, ex.stream);
    s.bound = 2.0 * s.hinge + 2.0 * std::sqrt(static_cast<double>(cfg.rounds)) * r * wn;
    return s;
}

void write_perceptron_csv(std::ostream& out, const linear::PerceptronResult& r, std::size_t run_id, bool header) {
    if (header) out << "run_id,t,probe,y,prediction,updated\n";
    for (const auto& rec : r.rounds) {
        out << run_id << ',' << rec.t << ',' << (rec.probe ? 1 : 0) << ',' << label_int(rec.y) << ','
            << label_int(rec.prediction) << ',' << (rec.updated ? 1 : 0) << '\n';
    }
}

void write_perceptron_summary(std::ostream& out, const PreparedExperiment& ex, const PerceptronSummary& s) {
    const auto& cfg = ex.config;
    out << "seed = " << cfg.seed << '\n';
    out << "protocol = perceptron\n";
    out << "T = " << cfg.rounds << '\n';
    out << "repetitions = " << s.repetitions << '\n';
    out << "alpha = " << format_number(cfg.alpha) << '\n';
    out << "radius = " << format_number(ex.stream.radius()) << '\n';
    out << "hinge_loss = " << format_number(s.hinge) << '\n';
    write_stat(out, "mistakes", s.mistakes);
    out << "bound_formula = 2*hinge+2*sqrt(T)*R*|w*|\n";
    out << "bound = " << format_number(s.bound) << '\n';
    out << "within_bound = " << (s.mistakes.mean <= s.bound ? "true" : "false") << '\n';
}

}  // namespace stratclass
