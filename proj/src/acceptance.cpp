#include "stratclass/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "stratclass/experiment.hpp"
#include "stratclass/kernels.hpp"
#include "stratclass/linear.hpp"

namespace stratclass::acceptance {
namespace {

constexpr std::uint64_t kBaseSeed = 20240611;

std::string num(double x) { return format_number(x); }

struct Checker {
    CheckResult r;
    std::ostringstream measured;
    void fail(const std::string& why) {
        if (r.pass) measured << "FIRST FAILURE: " << why << "; ";
        r.pass = false;
    }
    CheckResult done() {
        r.measured = measured.str();
        return r;
    }
};

Checker start(int id, std::string title, std::string bound) {
    Checker c;
    c.r.id = id;
    c.r.title = std::move(title);
    c.r.bound = std::move(bound);
    c.r.pass = true;
    return c;
}

double log_size(const HypothesisClass& hc) { return std::log(static_cast<double>(hc.size())); }

// Index of the first hypothesis with a non-empty positive region.
std::size_t first_nonempty(const HypothesisClass& hc) {
    for (std::size_t i = 0; i < hc.size(); ++i) {
        if (hc[i].positive_bits().any()) return i;
    }
    throw std::logic_error("hypothesis class has no positive region");
}

ManipulationGraph instance_graph(std::uint64_t seed, std::size_t i) {
    RandomGraphParams p;
    p.n = 10 + static_cast<int>(i % 21);  // 10..30
    p.edge_probability = 0.15;
    p.max_degree = 12;
    return random_graph(p, seed);
}

CheckResult halving_failure() {
    auto c = start(1, "vanilla halving errs every round on star(10) with (x0,+1)x200",
                   "mistakes == 200, |alive| == 10, every hypothesis loss == 0");
    const auto g = star_graph(10);
    const auto hc = star_family(10);
    auto learner = make_vanilla_halving(g, hc);
    auto adversary = make_fixed(std::vector<Agent>(200, Agent{0, Label::Positive, std::nullopt}));
    const auto t = run(Protocol::deterministic(), g, hc, *learner, *adversary, 200, kBaseSeed);
    const std::size_t alive = learner->weight_state()->alive.count();
    const bool zero = std::all_of(t.hypothesis_losses.begin(), t.hypothesis_losses.end(), [](double l) { return l == 0; });
    c.measured << "mistakes=" << t.mistakes() << " alive=" << alive << " max_hypothesis_loss="
               << num(*std::max_element(t.hypothesis_losses.begin(), t.hypothesis_losses.end()));
    if (t.mistakes() != 200) c.fail("mistakes");
    if (alive != 10) c.fail("alive");
    if (!zero) c.fail("hypothesis loss");
    return c.done();
}

CheckResult biased_majority_bound() {
    auto c = start(2, "biased majority on 100 random realizable instances",
                   "mistakes <= (delta+2)*ln|H| per instance, h* alive at the end");
    double worst_slack = 1e300;
    std::size_t max_delta = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        const std::uint64_t seed = derive_seed(kBaseSeed + 2, i);
        const auto g = instance_graph(derive_seed(seed, "graph"), i);
        const auto hc = random_family(g.node_count(), 40, 0.25, derive_seed(seed, "hypotheses"));
        const std::size_t target = first_nonempty(hc);
        const auto seq = random_realizable_sequence(g, CostModel::ShortestPath, hc[target], 500,
                                                    derive_seed(seed, "adversary"));
        BiasedMajority learner(g, hc);
        auto adversary = make_fixed(seq);
        const auto t = run(Protocol::deterministic(), g, hc, learner, *adversary, 500, seed);
        const int delta = g.degree_stats().max_degree;
        max_delta = std::max<std::size_t>(max_delta, static_cast<std::size_t>(delta));
        const double bound = (delta + 2.0) * log_size(hc);
        worst_slack = std::min(worst_slack, bound - static_cast<double>(t.mistakes()));
        if (static_cast<double>(t.mistakes()) > bound) c.fail("instance " + std::to_string(i) + " exceeded the bound");
        if (!learner.weight_state()->alive.test(target)) c.fail("instance " + std::to_string(i) + " removed h*");
        if (t.opt != 0) c.fail("instance " + std::to_string(i) + " not realizable");
        if (delta > 12) c.fail("instance " + std::to_string(i) + " has delta > 12");
    }
    c.measured << "instances=100 max_delta=" << max_delta << " min(bound-mistakes)=" << num(worst_slack);
    return c.done();
}

CheckResult deterministic_lower_bound() {
    auto c = start(3, "det lower bound on star(delta), delta in {4,8,16}, T=10*delta",
                   "loss 1 every round, OPT <= T/delta (ratio >= delta); realizable variant forces >= delta-1 "
                   "mistakes on biased majority");
    for (int delta : {4, 8, 16}) {
        const auto g = star_graph(delta);
        const auto hc = star_family(delta);
        const std::size_t rounds = 10 * static_cast<std::size_t>(delta);
        std::vector<std::unique_ptr<Learner>> learners;
        learners.push_back(std::make_unique<BiasedMajority>(g, hc));
        learners.push_back(make_biased_weighted_majority(g, hc));
        learners.push_back(make_vanilla_halving(g, hc));
        learners.push_back(make_br_halving(g, hc));
        for (auto& learner : learners) {
            auto adversary = make_det_lower_bound(g);
            const auto t = run(Protocol::deterministic(), g, hc, *learner, *adversary, rounds, kBaseSeed);
            const bool every = std::all_of(t.records.begin(), t.records.end(), [](const auto& r) { return r.loss == 1; });
            c.measured << "d=" << delta << ' ' << t.learner << ": loss=" << num(t.cumulative_loss()) << " OPT="
                       << num(t.opt) << "; ";
            if (!every) c.fail(t.learner + " escaped a round at delta " + std::to_string(delta));
            if (t.opt > static_cast<double>(rounds) / delta) c.fail("OPT above T/delta");
        }
        BiasedMajority alg1(g, hc);
        auto realizable = make_det_lower_bound_realizable(g);
        const auto t = run(Protocol::deterministic(), g, hc, alg1, *realizable, rounds, kBaseSeed);
        c.measured << "d=" << delta << " realizable: mistakes=" << t.mistakes() << " OPT=" << num(t.opt) << "; ";
        if (t.mistakes() < static_cast<std::size_t>(delta - 1)) c.fail("realizable variant forced too few mistakes");
        if (t.opt != 0) c.fail("realizable variant is not realizable");
    }
    return c.done();
}

CheckResult weighted_majority_bound() {
    auto c = start(4, "biased weighted majority on 100 random agnostic instances (noise 0.02 / 0.1, T=1000)",
                   "mistakes <= e*(delta+2)*(ln|H|+OPT) per instance");
    double worst_slack = 1e300;
    double max_opt = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        const std::uint64_t seed = derive_seed(kBaseSeed + 4, i);
        const double noise = i % 2 == 0 ? 0.02 : 0.1;
        const auto g = instance_graph(derive_seed(seed, "graph"), i);
        const auto hc = random_family(g.node_count(), 40, 0.25, derive_seed(seed, "hypotheses"));
        const std::size_t target = first_nonempty(hc);
        const auto seq = random_agnostic_sequence(g, CostModel::ShortestPath, hc[target], 1000,
                                                  derive_seed(seed, "adversary"), noise);
        auto learner = make_biased_weighted_majority(g, hc);
        auto adversary = make_fixed(seq);
        const auto t = run(Protocol::deterministic(), g, hc, *learner, *adversary, 1000, seed);
        const int delta = g.degree_stats().max_degree;
        const double bound = std::numbers::e * (delta + 2.0) * (log_size(hc) + t.opt);
        worst_slack = std::min(worst_slack, bound - static_cast<double>(t.mistakes()));
        max_opt = std::max(max_opt, t.opt);
        if (static_cast<double>(t.mistakes()) > bound) c.fail("instance " + std::to_string(i) + " exceeded the bound");
    }
    c.measured << "instances=100 max_OPT=" << num(max_opt) << " min(bound-mistakes)=" << num(worst_slack);
    return c.done();
}

CheckResult improved_halving_complete() {
    auto c = start(5, "improved biased majority on complete(12) with the full class (4096)",
                   "<= 1 mistake against every adversary in the suite");
    const auto g = complete_graph(12);
    const auto hc = full_family(12, 4096);
    const std::size_t rounds = 200;
    std::size_t worst = 0;
    auto check = [&](const std::string& label, Adversary& adversary) {
        auto learner = make_improved_biased_majority(g, hc);
        const auto t = run(Protocol::deterministic(), g, hc, *learner, adversary, rounds, kBaseSeed);
        worst = std::max(worst, t.mistakes());
        c.measured << label << ":" << t.mistakes() << " ";
        if (t.opt != 0) c.fail(label + " stream not realizable");
        if (t.mistakes() > 1) c.fail(label + " forced more than one mistake");
    };
    auto greedy = make_greedy_realizable(g, hc);
    check("greedy-realizable", *greedy);
    for (std::size_t target : {std::size_t{0}, std::size_t{1}, std::size_t{77}, std::size_t{2048}, std::size_t{4095}}) {
        const double rate = hc[target].positive_bits().any() ? 0.5 : 0.0;
        auto adv = make_fixed(random_realizable_sequence(g, CostModel::ShortestPath, hc[target], rounds,
                                                         derive_seed(kBaseSeed + 5, target), rate));
        check("random-realizable[h" + std::to_string(target) + "]", *adv);
    }
    c.measured << "worst=" << worst;
    return c.done();
}

std::vector<std::pair<std::string, std::unique_ptr<Learner>>> fractional_learners(const ManipulationGraph& learner_graph,
                                                                                  const HypothesisClass& hc) {
    std::vector<std::pair<std::string, std::unique_ptr<Learner>>> out;
    out.emplace_back("embedded-weighted-majority",
                     make_embedded_fractional(make_biased_weighted_majority(learner_graph, hc)));
    out.emplace_back("uniform-0.5", make_constant_fraction(learner_graph.node_count(), 0.5));
    out.emplace_back("random-fraction", make_random_fraction(learner_graph.node_count(), kBaseSeed + 6));
    return out;
}

CheckResult fractional_free_edge() {
    auto c = start(6, "fractional free-edge adversary on star(8), T=500",
                   "recorded expected loss >= 0.5 on every round, for every fractional learner");
    const auto g = star_graph(8);
    const auto hc = star_family(8);
    for (auto& [label, learner] : fractional_learners(g, hc)) {
        auto adversary = make_frac_free_edge(g);
        const auto t = run(Protocol::fractional(CostModel::FreeEdge), g, hc, *learner, *adversary, 500, kBaseSeed);
        double low = 1.0;
        for (const auto& r : t.records) low = std::min(low, r.loss);
        c.measured << label << ": min_round_loss=" << num(low) << " total=" << num(t.cumulative_loss()) << " OPT="
                   << num(t.opt) << "; ";
        if (low < 0.5) c.fail(label);
    }
    return c.done();
}

CheckResult fractional_weighted() {
    constexpr double eps = 1e-6;
    auto c = start(7, "fractional weighted adversary on star(8) with w=0.5+1e-6, T=500",
                   "recorded expected loss >= 0.25-1e-6 on every round; max degree of expand(G) == delta");
    const auto g = star_graph(8, 0.5 + eps);
    const auto expanded = expand(g);
    const auto hc = star_family(8);
    const int tilde = expanded.degree_stats().max_degree;
    c.measured << "expanded_delta=" << tilde << "; ";
    if (tilde != 8) c.fail("expanded degree");
    for (auto& [label, learner] : fractional_learners(expanded, hc)) {
        auto adversary = make_frac_weighted(g, eps);
        const auto t = run(Protocol::fractional(CostModel::ShortestPath), g, hc, *learner, *adversary, 500, kBaseSeed);
        double low = 1.0;
        for (const auto& r : t.records) low = std::min(low, r.loss);
        c.measured << label << ": min_round_loss=" << num(low) << " total=" << num(t.cumulative_loss()) << "; ";
        if (low < 0.25 - eps) c.fail(label);
    }
    return c.done();
}

CheckResult expanded_equivalence() {
    auto c = start(8, "expanded-graph equivalence on 50 random weighted graphs (n <= 8)",
                   "loss in G (shortest path) == loss in expand(G) (unit edges) for all h, u, y");
    std::size_t comparisons = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        const std::uint64_t seed = derive_seed(kBaseSeed + 8, i);
        RandomGraphParams p;
        p.n = 3 + static_cast<int>(i % 6);
        p.edge_probability = 0.45;
        p.min_weight = 0.1;
        p.max_weight = 1.0;
        auto g = random_graph(p, seed);
        if (i % 2 == 1) {
            // Quarter weights create exact ties at cost 1.
            std::vector<Edge> edges = g.edges();
            for (auto& e : edges) e.weight = std::ceil(e.weight * 4.0) / 4.0;
            g = ManipulationGraph(g.node_count(), false, std::move(edges));
        }
        const auto expanded = expand(g);
        const auto hc = full_family(g.node_count(), 1u << 8);
        for (std::size_t h = 0; h < hc.size(); ++h) {
            for (NodeId u = 0; u < g.node_count(); ++u) {
                for (Label y : {Label::Negative, Label::Positive}) {
                    ++comparisons;
                    if (loss_br_det(g, CostModel::ShortestPath, hc[h], u, y) !=
                        loss_br_det(expanded, CostModel::UnitEdge, hc[h], u, y)) {
                        c.fail("graph " + std::to_string(i) + " h=" + hc[h].to_string() + " u=" + std::to_string(u));
                    }
                }
            }
        }
    }
    c.measured << "graphs=50 comparisons=" << comparisons;
    return c.done();
}

CheckResult block_estimator() {
    auto c = start(9, "block-reduction loss estimate is unbiased over the probe position (block size 10)",
                   "mean over the 10 probe positions of the estimate == block-average loss, |diff| <= 1e-12");
    const auto g = star_graph(8);
    const auto hc = star_family(8);
    const auto seq = star_mixture_sequence(8, 10, kBaseSeed + 9);
    std::vector<double> mean(hc.size(), 0.0);
    for (std::size_t tau = 0; tau < 10; ++tau) {
        BlockReduction learner(g, hc, 10, 1, 0.0, kBaseSeed);
        learner.set_probe_rounds({tau});
        auto adversary = make_fixed(seq);
        const auto t = run(Protocol::randomized(), g, hc, learner, *adversary, 10, kBaseSeed);
        if (t.records[tau].v != t.records[tau].u) c.fail("probe round was not truthful");
        for (std::size_t h = 0; h < hc.size(); ++h) mean[h] += learner.last_block_estimate()[h] / 10.0;
    }
    double worst = 0.0;
    for (std::size_t h = 0; h < hc.size(); ++h) {
        double avg = 0.0;
        for (const Agent& a : seq) avg += loss_det(hc[h], best_respond_det(g, CostModel::ShortestPath, hc[h], a.u).v, a.y);
        avg /= 10.0;
        worst = std::max(worst, std::abs(avg - mean[h]));
    }
    c.measured << "max|mean_estimate - block_average|=" << num(worst);
    if (worst > 1e-12) c.fail("estimate is biased");
    return c.done();
}

struct RegretPoint {
    double mean_regret = 0.0;
    double mean_opt = 0.0;
};

template <class MakeLearner>
RegretPoint mixture_regret(std::size_t rounds, MakeLearner make, const std::function<void(const Transcript&)>& each = {},
                           const RunHooks& hooks = {}) {
    const auto g = star_graph(8);
    const auto hc = star_family(8);
    std::vector<double> regrets, opts;
    for (std::size_t s = 0; s < 20; ++s) {
        const std::uint64_t seed = repetition_seed(kBaseSeed + 10, s);
        auto learner = make(g, hc, rounds, seed);
        auto adversary = make_fixed(star_mixture_sequence(8, rounds, derive_seed(seed, "adversary")));
        const auto t = run(Protocol::randomized(), g, hc, *learner, *adversary, rounds, seed, hooks);
        regrets.push_back(regret(t));
        opts.push_back(t.opt);
        if (each) each(t);
    }
    return {summarize(regrets).mean, summarize(opts).mean};
}

void sublinear_check(Checker& c, const std::string& label, const RegretPoint& small, const RegretPoint& large) {
    const double ratio = large.mean_regret / small.mean_regret;
    c.measured << label << ": regret(1000)=" << num(small.mean_regret) << " regret(8000)=" << num(large.mean_regret)
               << " ratio=" << num(ratio) << "; ";
    if (!(small.mean_regret > 0.0)) c.fail(label + ": regret at T=1000 is not positive, ratio undefined");
    if (!(ratio < std::pow(8.0, 0.8))) c.fail(label + ": ratio");
    if (!(large.mean_regret < 0.25 * 8000)) c.fail(label + ": regret(8000) not below T/4");
}

CheckResult block_reduction_sublinear() {
    auto c = start(10, "block reduction sublinear regret on star(8), mixture stream, 20 seeds",
                   "mean regret(8000)/mean regret(1000) < 8^0.8 and mean regret(8000) < 2000");
    auto make = [](const ManipulationGraph& g, const HypothesisClass& hc, std::size_t T, std::uint64_t seed) {
        return std::make_unique<BlockReduction>(g, hc, T, 0, 0.0, derive_seed(seed, "probe-schedule"));
    };
    sublinear_check(c, "block-reduction", mixture_regret(1000, make), mixture_regret(8000, make));
    return c.done();
}

CheckResult exp3_and_adaptive() {
    auto c = start(11, "EXP3 and adaptive explore on the same setup",
                   "same ratio test for both; adaptive explore weights change only on probe rounds");
    auto exp3 = [](const ManipulationGraph&, const HypothesisClass& hc, std::size_t T, std::uint64_t) {
        return make_exp3(hc, default_exp3_rate(T, hc.size()));
    };
    sublinear_check(c, "exp3", mixture_regret(1000, exp3), mixture_regret(8000, exp3));

    std::size_t changes = 0;
    std::size_t off_probe_changes = 0;
    std::vector<double> previous;
    double previous_scale = 0.0;
    RunHooks hooks;
    hooks.after_round = [&](const RoundRecord& rec, const Learner& learner) {
        const WeightState* ws = learner.weight_state();
        if (rec.t == 0) {
            previous.assign(ws->w.size(), 1.0);
            previous_scale = 0.0;
        }
        const bool changed = ws->w != previous || ws->log_scale != previous_scale;
        const auto& ae = dynamic_cast<const AdaptiveExplore&>(learner);
        if (changed) {
            ++changes;
            if (rec.realized != ae.probe_index()) ++off_probe_changes;
        }
        previous = ws->w;
        previous_scale = ws->log_scale;
    };
    auto adaptive = [](const ManipulationGraph& g, const HypothesisClass& hc, std::size_t T, std::uint64_t) {
        return std::make_unique<AdaptiveExplore>(g, hc, T, 0.0, 0.0);
    };
    const auto small = mixture_regret(1000, adaptive, {}, hooks);
    const auto large = mixture_regret(8000, adaptive, {}, hooks);
    sublinear_check(c, "adaptive-explore", small, large);
    c.measured << "weight changes=" << changes << " off-probe changes=" << off_probe_changes;
    if (off_probe_changes != 0) c.fail("adaptive explore changed weights off a probe round");
    if (changes == 0) c.fail("adaptive explore never updated");
    return c.done();
}

CheckResult strategic_perceptron() {
    auto c = start(12, "strategic perceptron, d=2, margin 1, R=1, alpha=0.3, T=400, K=20, 20 seeds",
                   "mean mistakes <= 2*hinge + 2*sqrt(T)*R*|w*| (separable and 5% flipped)");
    const linear::Vec w_star = {1.0, 0.0};
    for (double noise : {0.0, 0.05}) {
        const auto stream = linear::margin_stream(2, 400, 1.0, 1.0, noise, kBaseSeed + 12);
        const double hinge = linear::hinge_loss(w_star, stream);
        const double bound = 2.0 * hinge + 2.0 * std::sqrt(400.0) * stream.radius() * linear::norm(w_star);
        std::vector<double> mistakes;
        for (std::size_t s = 0; s < 20; ++s) {
            const auto r = linear::strategic_perceptron_run(stream, 0.3, 20, repetition_seed(kBaseSeed + 12, s));
            mistakes.push_back(static_cast<double>(r.mistakes));
        }
        const double mean = summarize(mistakes).mean;
        c.measured << "noise=" << num(noise) << ": hinge=" << num(hinge) << " bound=" << num(bound)
                   << " mean_mistakes=" << num(mean) << "; ";
        if (noise == 0.0 && bound != 40.0) c.fail("separable bound is not 40");
        if (!(mean <= bound)) c.fail("noise " + num(noise));
    }
    return c.done();
}

CheckResult two_populations() {
    auto c = start(13, "two populations on star(6), beta in {0.25,0.5,1}, T=2000, 50 seeds",
                   "mean mistakes <= e*min(delta+1+1/beta, delta^2+2)*(ln|H|+mean OPT); beta=1 transcript == "
                   "biased weighted majority");
    const auto g = star_graph(6);
    const auto hc = star_family(6);
    const std::size_t rounds = 2000;
    const int delta = 6;
    for (double beta : {0.25, 0.5, 1.0}) {
        std::vector<double> mistakes, opts;
        bool identical = true;
        for (std::size_t s = 0; s < 50; ++s) {
            const std::uint64_t seed = repetition_seed(kBaseSeed + 13, s);
            const auto seq = random_agnostic_sequence(g, CostModel::UnitEdge, hc[0], rounds,
                                                      derive_seed(seed, "adversary"), 0.05);
            auto learner = make_two_pop_weighted_majority(g, hc, beta);
            auto adversary = make_fixed(seq);
            const auto t = run(Protocol::two_population(beta), g, hc, *learner, *adversary, rounds, seed);
            mistakes.push_back(static_cast<double>(t.mistakes()));
            opts.push_back(t.opt);
            if (beta == 1.0) {
                auto alg2 = make_biased_weighted_majority(g, hc);
                auto replay = make_fixed(seq);
                const auto d = run(Protocol::deterministic(), g, hc, *alg2, *replay, rounds, seed);
                for (std::size_t k = 0; k < rounds; ++k) {
                    const auto& a = t.records[k];
                    const auto& b = d.records[k];
                    if (a.u != b.u || a.v != b.v || a.y != b.y || a.loss != b.loss) identical = false;
                }
            }
        }
        const double mean_m = summarize(mistakes).mean;
        const double mean_opt = summarize(opts).mean;
        const double bound = std::numbers::e * two_pop_denominator(delta, beta) * (log_size(hc) + mean_opt);
        c.measured << "beta=" << num(beta) << ": mean_mistakes=" << num(mean_m) << " mean_OPT=" << num(mean_opt)
                   << " bound=" << num(bound);
        if (beta == 1.0) c.measured << " identical_to_alg2=" << (identical ? "yes" : "no");
        c.measured << "; ";
        if (!(mean_m <= bound)) c.fail("beta " + num(beta) + " exceeded the bound");
        if (beta == 1.0 && !identical) c.fail("beta 1 transcript differs from biased weighted majority");
    }
    return c.done();
}

std::string run_config_csv(const std::string& text, int threads) {
    std::istringstream in(text);
    const auto ex = prepare(parse_config(in));
    const int saved = kernels::thread_count();
    kernels::set_thread_count(threads);
    const auto result = run_experiment(ex);
    kernels::set_thread_count(saved);
    std::ostringstream out;
    write_csv_header(out);
    for (std::size_t i = 0; i < result.transcripts.size(); ++i) write_csv_rows(out, result.transcripts[i], i);
    write_summary(out, ex, result.summary);
    return out.str();
}

CheckResult replay_determinism() {
    auto c = start(14, "replay determinism across configs", "two runs of the same config give byte-identical CSV");
    const std::vector<std::string> configs = {
        "protocol = deterministic\ngraph = random:20:0.2:1:1:8\nhypotheses = random:30:0.3\nlearner = "
        "biased-weighted-majority\nadversary = random-agnostic\nnoise = 0.1\nT = 300\nseed = 5\nrepetitions = 3\n",
        "protocol = randomized\ngraph = star:8\nhypotheses = star\nlearner = block-reduction\nadversary = "
        "star-mixture\nT = 500\nseed = 6\nrepetitions = 4\n",
        "protocol = randomized\ngraph = star:8\nhypotheses = star\nlearner = adaptive-explore\nadversary = "
        "star-mixture\nT = 500\nseed = 7\nrepetitions = 3\n",
        "protocol = fractional\ncost_model = free-edge\ngraph = star:6\nlearner = random-fraction\nadversary = "
        "frac-free-edge\nT = 200\nseed = 8\nrepetitions = 2\n",
        "protocol = two-pop\ngraph = star:6\nlearner = two-pop-weighted-majority\nbeta = 0.5\nadversary = "
        "random-agnostic\nnoise = 0.05\nT = 400\nseed = 9\nrepetitions = 3\n",
    };
    std::size_t bytes = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const std::string a = run_config_csv(configs[i], 1);
        const std::string b = run_config_csv(configs[i], 4);
        bytes += a.size();
        if (a != b) c.fail("config " + std::to_string(i) + " differs between runs");
    }
    c.measured << "configs=" << configs.size() << " bytes_compared=" << bytes << " (second run with 4 threads)";
    return c.done();
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"deterministic", "fractional", "randomized",
                                                   "perceptron",    "two-pop",    "all"};
    return names;
}

bool is_suite(const std::string& name) {
    const auto& names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<int> suite_criteria(const std::string& name) {
    if (name == "deterministic") return {1, 2, 3, 4, 5};
    if (name == "fractional") return {6, 7, 8};
    if (name == "randomized") return {9, 10, 11, 14};
    if (name == "perceptron") return {12};
    if (name == "two-pop") return {13};
    if (name == "all") {
        std::vector<int> all;
        for (int i = 1; i <= kCriterionCount; ++i) all.push_back(i);
        return all;
    }
    throw std::invalid_argument("unknown suite " + name);
}

CheckResult run_criterion(int id) {
    switch (id) {
        case 1: return halving_failure();
        case 2: return biased_majority_bound();
        case 3: return deterministic_lower_bound();
        case 4: return weighted_majority_bound();
        case 5: return improved_halving_complete();
        case 6: return fractional_free_edge();
        case 7: return fractional_weighted();
        case 8: return expanded_equivalence();
        case 9: return block_estimator();
        case 10: return block_reduction_sublinear();
        case 11: return exp3_and_adaptive();
        case 12: return strategic_perceptron();
        case 13: return two_populations();
        case 14: return replay_determinism();
        default: throw std::invalid_argument("no criterion " + std::to_string(id));
    }
}

std::string format_result(const CheckResult& r) {
    std::ostringstream out;
    out << (r.pass ? "PASS" : "FAIL") << " AC" << r.id << ' ' << r.title << " | bound: " << r.bound
        << " | measured: " << r.measured;
    return out.str();
}

}  // namespace stratclass::acceptance
