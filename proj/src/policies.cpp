#include "stratclass/policies.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "stratclass/rng.hpp"

namespace stratclass {

DeterministicClassifier DeterministicClassifier::from_labels(std::span<const Label> labels) {
    BitVector bits(labels.size());
    for (std::size_t v = 0; v < labels.size(); ++v) bits.set(v, labels[v] == Label::Positive);
    return DeterministicClassifier(std::move(bits));
}

DeterministicClassifier DeterministicClassifier::parse(std::string_view text) {
    BitVector bits(text.size());
    for (std::size_t v = 0; v < text.size(); ++v) {
        if (text[v] == '+') {
            bits.set(v);
        } else if (text[v] != '-') {
            throw PolicyError("hypothesis string may contain only '+' and '-': '" + std::string(text) + "'");
        }
    }
    return DeterministicClassifier(std::move(bits));
}

std::vector<NodeId> DeterministicClassifier::positive_region() const {
    std::vector<NodeId> out;
    positive_.for_each_set([&](std::size_t v) { out.push_back(static_cast<NodeId>(v)); });
    return out;
}

std::string DeterministicClassifier::to_string() const {
    std::string s(node_count(), '-');
    positive_.for_each_set([&](std::size_t v) { s[v] = '+'; });
    return s;
}

FractionalClassifier::FractionalClassifier(std::vector<double> fractions) : fractions_(std::move(fractions)) {
    for (double p : fractions_) {
        if (!(p >= 0.0 && p <= 1.0)) throw PolicyError("fraction outside [0,1]");
    }
}

FractionalClassifier FractionalClassifier::embed(const DeterministicClassifier& h) {
    std::vector<double> f(h.node_count(), 0.0);
    for (std::size_t v = 0; v < f.size(); ++v) f[v] = h.positive(static_cast<NodeId>(v)) ? 1.0 : 0.0;
    return FractionalClassifier(std::move(f));
}

bool FractionalClassifier::is_deterministic() const {
    for (double p : fractions_) {
        if (p != 0.0 && p != 1.0) return false;
    }
    return true;
}

DeterministicClassifier FractionalClassifier::to_deterministic() const {
    if (!is_deterministic()) throw PolicyError("fractional classifier has non-integral fractions");
    BitVector bits(fractions_.size());
    for (std::size_t v = 0; v < fractions_.size(); ++v) bits.set(v, fractions_[v] == 1.0);
    return DeterministicClassifier(std::move(bits));
}

HypothesisClass::HypothesisClass(std::vector<DeterministicClassifier> hypotheses) : hypotheses_(std::move(hypotheses)) {
    if (hypotheses_.empty()) throw PolicyError("hypothesis class must be non-empty");
    node_count_ = hypotheses_.front().node_count();
    for (const auto& h : hypotheses_) {
        if (h.node_count() != node_count_) throw PolicyError("hypotheses disagree on the node count");
    }
    positive_by_node_.assign(node_count_, BitVector(hypotheses_.size()));
    for (std::size_t i = 0; i < hypotheses_.size(); ++i) {
        hypotheses_[i].positive_bits().for_each_set([&](std::size_t v) { positive_by_node_[v].set(i); });
    }
}

HypothesisClass HypothesisClass::prefix(std::size_t k) const {
    if (k == 0 || k > size()) throw PolicyError("prefix size out of range");
    return HypothesisClass(std::vector<DeterministicClassifier>(hypotheses_.begin(), hypotheses_.begin() + static_cast<std::ptrdiff_t>(k)));
}

HypothesisClass star_family(int leaves) {
    if (leaves < 1) throw PolicyError("star family needs at least one leaf");
    const auto n = static_cast<std::size_t>(leaves) + 1;
    std::vector<DeterministicClassifier> hs;
    for (int i = 1; i <= leaves; ++i) {
        BitVector bits(n);
        bits.set(static_cast<std::size_t>(i));
        hs.emplace_back(std::move(bits));
    }
    return HypothesisClass(std::move(hs));
}

DeterministicClassifier all_positive(std::size_t n) { return DeterministicClassifier(BitVector(n, true)); }
DeterministicClassifier all_negative(std::size_t n) { return DeterministicClassifier(BitVector(n, false)); }

HypothesisClass full_family(std::size_t n, std::size_t cap) {
    if (n >= 63 || (std::size_t{1} << n) > cap) {
        throw PolicyError("full family of 2^" + std::to_string(n) + " labelings exceeds cap " + std::to_string(cap));
    }
    const std::size_t count = std::size_t{1} << n;
    std::vector<DeterministicClassifier> hs;
    hs.reserve(count);
    for (std::size_t index = 0; index < count; ++index) {
        BitVector bits(n);
        for (std::size_t v = 0; v < n; ++v) bits.set(v, (index >> v) & 1u);
        hs.emplace_back(std::move(bits));
    }
    return HypothesisClass(std::move(hs));
}

HypothesisClass random_family(std::size_t n, std::size_t count, double positive_rate, std::uint64_t seed) {
    if (count == 0) throw PolicyError("random family needs at least one hypothesis");
    if (n < 63 && count > (std::size_t{1} << n)) throw PolicyError("more hypotheses requested than labelings exist");
    Rng rng(seed);
    std::set<std::string> seen;
    std::vector<DeterministicClassifier> hs;
    while (hs.size() < count) {
        BitVector bits(n);
        for (std::size_t v = 0; v < n; ++v) bits.set(v, uniform_real(rng) < positive_rate);
        DeterministicClassifier h(std::move(bits));
        if (seen.insert(h.to_string()).second) hs.push_back(std::move(h));
    }
    return HypothesisClass(std::move(hs));
}

bool verify_realizable(const ManipulationGraph& g, const DeterministicClassifier& h_star,
                       std::span<const LabeledNode> seq) {
    if (!g.unit_cost() || g.directed()) throw PolicyError("verify_realizable requires a unit-cost undirected graph");
    for (const auto& [u, y] : seq) {
        bool dominated = false;
        for (NodeId v : g.neighborhood(u, 1)) dominated = dominated || h_star.positive(v);
        if (dominated != (y == Label::Positive)) return false;
    }
    return true;
}

HypothesisClass parse_hypotheses(std::istream& in) {
    std::vector<DeterministicClassifier> hs;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view body(line);
        if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        while (!body.empty() && (body.back() == ' ' || body.back() == '\r' || body.back() == '\t')) body.remove_suffix(1);
        while (!body.empty() && (body.front() == ' ' || body.front() == '\t')) body.remove_prefix(1);
        if (body.empty()) continue;
        hs.push_back(DeterministicClassifier::parse(body));
    }
    return HypothesisClass(std::move(hs));
}

HypothesisClass load_hypotheses(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PolicyError("cannot open hypothesis file '" + path + "'");
    return parse_hypotheses(in);
}

void write_hypotheses(std::ostream& out, const HypothesisClass& hc) {
    for (const auto& h : hc.hypotheses()) out << h.to_string() << '\n';
}

HypothesisClass build_hypotheses(std::string_view spec, const ManipulationGraph& g, std::uint64_t seed) {
    const std::size_t n = g.node_count();
    auto bad = [&] { return PolicyError("malformed hypothesis spec '" + std::string(spec) + "'"); };
    auto number = [&](std::string_view s, auto& out) {
        auto res = std::from_chars(s.data(), s.data() + s.size(), out);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw bad();
    };
    if (spec == "star") {
        const auto stats = g.degree_stats();
        if (n < 2 || static_cast<std::size_t>(stats.max_degree) != n - 1 || g.edges().size() != n - 1) {
            throw PolicyError("star hypotheses require a star graph");
        }
        return star_family(static_cast<int>(n - 1));
    }
    if (spec == "full") return full_family(n, std::size_t{1} << 20);
    if (spec.starts_with("full:")) {
        std::size_t cap = 0;
        number(spec.substr(5), cap);
        return full_family(n, cap);
    }
    if (spec.starts_with("file:")) {
        auto hc = load_hypotheses(std::string(spec.substr(5)));
        if (hc.node_count() != n) throw PolicyError("hypothesis file node count does not match the graph");
        return hc;
    }
    if (spec.starts_with("random:")) {
        std::string_view rest = spec.substr(7);
        const auto colon = rest.find(':');
        std::size_t count = 0;
        double rate = 0.2;
        number(rest.substr(0, colon), count);
        if (colon != std::string_view::npos) number(rest.substr(colon + 1), rate);
        return random_family(n, count, rate, seed);
    }
    throw bad();
}

}  // namespace stratclass
