#include "stratclass/engine.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "stratclass/kernels.hpp"

namespace stratclass {
namespace {

// reach[k] is the set an agent of sequence position k can profitably reach
// against any deterministic classifier. Only distinct (u, group) pairs are
// materialized.
struct ReachTable {
    std::vector<BitVector> sets;
    std::vector<std::size_t> index;  // per sequence position
};

ReachTable build_reach(const ManipulationGraph& g, const Protocol& protocol, std::span<const Agent> seq) {
    ReachTable table;
    const std::size_t n = g.node_count();
    std::vector<std::size_t> slot(2 * n, SIZE_MAX);
    for (const Agent& a : seq) {
        if (a.u >= n) throw EngineError("agent state out of range");
        std::size_t key = a.u;
        if (protocol.kind == Protocol::Kind::TwoPopulation) {
            if (!a.group) throw EngineError("two-population sequence needs a group per agent");
            key += *a.group == Group::A ? n : 0;
        }
        if (slot[key] == SIZE_MAX) {
            slot[key] = table.sets.size();
            table.sets.push_back(protocol.kind == Protocol::Kind::TwoPopulation ? reach_set_two_pop(g, a.u, *a.group)
                                                                                : reach_set(g, protocol.model, a.u));
        }
        table.index.push_back(slot[key]);
    }
    return table;
}

double hypothesis_loss(const DeterministicClassifier& h, const ReachTable& reach, std::span<const Agent> seq) {
    double loss = 0.0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const bool positive = reach.sets[reach.index[k]].count_and(h.positive_bits()) > 0;
        if (positive != (seq[k].y == Label::Positive)) loss += 1.0;
    }
    return loss;
}

OptResult finish(std::vector<double> losses) {
    OptResult out;
    out.losses = std::move(losses);
    out.opt = out.losses.empty() ? 0.0 : out.losses[0];
    for (double l : out.losses) out.opt = std::min(out.opt, l);
    return out;
}

std::size_t draw_index(const std::vector<double>& p, Rng& rng) {
    const double r = uniform_real(rng);
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        acc += p[i];
        last_positive = i;
        if (r < acc) return i;
    }
    // Rounding left r just above the accumulated mass.
    return last_positive;
}

void check_mixed(const MixedStrategy& m, std::size_t n) {
    if (!m.support || m.support->size() != m.probabilities.size() || m.support->empty()) {
        throw EngineError("mixed strategy support and probabilities disagree");
    }
    double total = 0.0;
    for (double p : m.probabilities) {
        if (!(p >= 0.0)) throw EngineError("mixed strategy has a negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw EngineError("mixed strategy probabilities do not sum to 1");
    if ((*m.support)[0].node_count() != n) throw EngineError("mixed strategy support has the wrong node count");
}

}  // namespace

CommitmentShape Protocol::expected_shape() const {
    switch (kind) {
        case Kind::Fractional: return CommitmentShape::Fractional;
        case Kind::Randomized: return CommitmentShape::Mixed;
        default: return CommitmentShape::Deterministic;
    }
}

std::string Protocol::name() const {
    switch (kind) {
        case Kind::Deterministic: return "deterministic";
        case Kind::Fractional: return model == CostModel::FreeEdge ? "fractional-free-edge" : "fractional";
        case Kind::Randomized: return "randomized";
        case Kind::TwoPopulation: return "two-pop";
    }
    return "unknown";
}

std::size_t Transcript::mistakes() const {
    std::size_t count = 0;
    for (const auto& r : records) count += r.loss > 0.0 ? 1 : 0;
    return count;
}

OptResult opt_oracle(const ManipulationGraph& g, const Protocol& protocol, const HypothesisClass& hc,
                     std::span<const Agent> seq) {
    const ReachTable reach = build_reach(g, protocol, seq);
    std::vector<double> losses(hc.size(), 0.0);
    const auto count = static_cast<std::ptrdiff_t>(hc.size());
    const std::size_t work = hc.size() * seq.size();
    const int threads = work >= (std::size_t{1} << 14) ? kernels::thread_count() : 1;
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::ptrdiff_t h = 0; h < count; ++h) {
        losses[static_cast<std::size_t>(h)] = hypothesis_loss(hc[static_cast<std::size_t>(h)], reach, seq);
    }
    return finish(std::move(losses));
}

OptResult opt_oracle_serial(const ManipulationGraph& g, const Protocol& protocol, const HypothesisClass& hc,
                            std::span<const Agent> seq) {
    const ReachTable reach = build_reach(g, protocol, seq);
    std::vector<double> losses(hc.size(), 0.0);
    for (std::size_t h = 0; h < hc.size(); ++h) losses[h] = hypothesis_loss(hc[h], reach, seq);
    return finish(std::move(losses));
}

Transcript run(const Protocol& protocol, const ManipulationGraph& g, const HypothesisClass& hc, Learner& learner,
               Adversary& adversary, std::size_t rounds, std::uint64_t seed, const RunHooks& hooks) {
    if (rounds == 0) throw EngineError("T must be positive");
    if (learner.shape() != protocol.expected_shape()) {
        throw EngineError("learner " + learner.name() + " does not commit in the shape protocol " + protocol.name() +
                          " expects");
    }
    if (hc.node_count() != g.node_count()) throw EngineError("hypothesis class and graph disagree on node count");
    if (protocol.kind == Protocol::Kind::Fractional && protocol.model == CostModel::UnitEdge) {
        throw EngineError("the fractional protocol uses shortest-path or free-edge costs");
    }
    if (protocol.kind == Protocol::Kind::TwoPopulation && !(protocol.beta >= 0.0 && protocol.beta <= 1.0)) {
        throw EngineError("beta must lie in [0,1]");
    }
    const std::size_t n = g.node_count();
    Rng draw_rng = make_rng(seed, "learner");
    Rng nature_rng = make_rng(seed, "nature");

    Transcript out;
    out.learner = learner.name();
    out.adversary = adversary.name();
    out.protocol = protocol;
    out.seed = seed;
    out.records.reserve(rounds);
    out.agents.reserve(rounds);
    double cum = 0.0;

    for (std::size_t t = 0; t < rounds; ++t) {
        const Commitment commitment = learner.commit();
        if (shape_of(commitment) != protocol.expected_shape()) throw EngineError("commitment shape changed mid-run");
        Agent agent = adversary.next(commitment);
        if (agent.u >= n) throw EngineError("adversary produced an out-of-range state");

        RoundRecord rec;
        rec.t = t;
        rec.u = agent.u;
        rec.y = agent.y;
        switch (protocol.kind) {
            case Protocol::Kind::Deterministic: {
                const auto& h = std::get<DeterministicClassifier>(commitment);
                rec.v = best_respond_det(g, protocol.model, h, agent.u).v;
                rec.loss = loss_det(h, rec.v, agent.y);
                break;
            }
            case Protocol::Kind::Fractional: {
                const auto& p = std::get<FractionalClassifier>(commitment);
                if (p.node_count() != n) throw EngineError("fractional commitment has the wrong node count");
                rec.v = best_respond_frac(g, protocol.model, p, agent.u).v;
                rec.loss = expected_loss_frac(p, rec.v, agent.y);
                break;
            }
            case Protocol::Kind::Randomized: {
                const auto& m = std::get<MixedStrategy>(commitment);
                check_mixed(m, n);
                const std::size_t i = draw_index(m.probabilities, draw_rng);
                const auto& h = (*m.support)[i];
                rec.realized = i;
                rec.v = best_respond_det(g, protocol.model, h, agent.u).v;
                rec.loss = loss_det(h, rec.v, agent.y);
                break;
            }
            case Protocol::Kind::TwoPopulation: {
                const auto& h = std::get<DeterministicClassifier>(commitment);
                agent.group = uniform_real(nature_rng) < protocol.beta ? Group::B : Group::A;
                rec.group = agent.group;
                rec.v = best_respond_two_pop(g, h, agent.u, agent.group).v;
                rec.loss = loss_det(h, rec.v, agent.y);
                break;
            }
        }
        cum += rec.loss;
        rec.cum_loss = cum;

        Feedback feedback;
        feedback.v = rec.v;
        feedback.y = rec.y;
        feedback.realized_index = rec.realized;
        feedback.group = rec.group;
        learner.observe(feedback);

        out.agents.push_back(agent);
        out.records.push_back(rec);
        if (hooks.after_round) hooks.after_round(out.records.back(), learner);
    }

    OptResult opt = opt_oracle(g, protocol, hc, out.agents);
    out.opt = opt.opt;
    out.hypothesis_losses = std::move(opt.losses);
    return out;
}

Stat summarize(std::span<const double> values) {
    Stat s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double x : values) sum += x;
    const auto n = static_cast<double>(values.size());
    s.mean = sum / n;
    if (values.size() > 1) {
        double sq = 0.0;
        for (double x : values) sq += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(sq / (n - 1.0));
    }
    s.half_width = 1.96 * s.stddev / std::sqrt(n);
    return s;
}

MonteCarloSummary summarize(std::span<const Transcript> transcripts, std::uint64_t seed) {
    std::vector<double> loss, reg, mist, opt;
    for (const auto& t : transcripts) {
        loss.push_back(t.cumulative_loss());
        reg.push_back(regret(t));
        mist.push_back(static_cast<double>(t.mistakes()));
        opt.push_back(t.opt);
    }
    MonteCarloSummary s;
    s.repetitions = transcripts.size();
    s.seed = seed;
    s.cumulative_loss = summarize(loss);
    s.regret = summarize(reg);
    s.mistakes = summarize(mist);
    s.opt = summarize(opt);
    return s;
}

MonteCarloResult monte_carlo(const std::function<Transcript(std::uint64_t)>& run_one, std::size_t repetitions,
                             std::uint64_t seed) {
    if (repetitions == 0) throw EngineError("repetitions must be at least 1");
    MonteCarloResult result;
    result.transcripts.resize(repetitions);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto count = static_cast<std::ptrdiff_t>(repetitions);
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::thread_count())
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            result.transcripts[static_cast<std::size_t>(i)] =
                run_one(repetition_seed(seed, static_cast<std::size_t>(i)));
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    result.summary = summarize(result.transcripts, seed);
    return result;
}

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_csv_header(std::ostream& out) {
    out << "run_id,t,learner,adversary,protocol,u,v,y,group,realized,loss,cum_loss\n";
}

void write_csv_rows(std::ostream& out, const Transcript& t, std::size_t run_id) {
    const std::string protocol = t.protocol.name();
    for (const auto& r : t.records) {
        out << run_id << ',' << r.t << ',' << t.learner << ',' << t.adversary << ',' << protocol << ',' << r.u << ','
            << r.v << ',' << label_int(r.y) << ',';
        if (r.group) out << group_char(*r.group);
        out << ',';
        if (r.realized) out << *r.realized;
        out << ',' << format_number(r.loss) << ',' << format_number(r.cum_loss) << '\n';
    }
}

std::string transcript_csv(const Transcript& t, std::size_t run_id) {
    std::ostringstream out;
    write_csv_header(out);
    write_csv_rows(out, t, run_id);
    return out.str();
}

}  // namespace stratclass
