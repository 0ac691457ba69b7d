#include "stratclass/linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

#include "stratclass/engine.hpp"
#include "stratclass/learners.hpp"
#include "stratclass/rng.hpp"

namespace stratclass::linear {
namespace {

bool is_zero(const Vec& w) {
    return std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; });
}

// sgn(w·z) with sgn(0) = +1; w = 0 predicts negative.
Label plain_prediction(const Vec& w, const Vec& z) {
    if (is_zero(w)) return Label::Negative;
    return dot(w, z) >= 0.0 ? Label::Positive : Label::Negative;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw LinearError("dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double LinearStream::radius() const {
    double r = 0.0;
    for (const auto& e : examples) r = std::max(r, norm(e.z));
    return r;
}

bool shifted_positive(const Vec& w, double alpha, const Vec& x) {
    if (is_zero(w)) return false;
    return dot(w, x) / norm(w) - alpha >= 0.0;
}

Vec linear_best_respond(const Vec& w, double alpha, const Vec& z) {
    if (alpha < 0.0) throw LinearError("alpha must be non-negative");
    if (is_zero(w) || shifted_positive(w, alpha, z)) return z;
    const double wn = norm(w);
    const double margin = dot(w, z) / wn;
    double shift = alpha - margin;
    if (shift > alpha) return z;
    Vec x(z.size());
    // The projection can land a rounding error short of the boundary; grow
    // the shift by a doubling nudge until the point classifies positive.
    double nudge = std::numeric_limits<double>::epsilon() * std::max({std::abs(shift), norm(z), 1.0});
    for (int attempt = 0; attempt < 64; ++attempt) {
        for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i] + shift * w[i] / wn;
        if (shifted_positive(w, alpha, x)) return x;
        shift += nudge;
        nudge *= 2.0;
    }
    throw LinearError("best response failed to reach the decision boundary");
}

double hinge_loss(const Vec& w_star, const LinearStream& stream) {
    double total = 0.0;
    for (const auto& e : stream.examples) total += std::max(0.0, 1.0 - label_int(e.y) * dot(e.z, w_star));
    return total;
}

std::size_t default_perceptron_blocks(std::size_t rounds, double radius, double w_star_norm) {
    const double raw = std::ceil(std::sqrt(static_cast<double>(rounds)) * radius * w_star_norm);
    const auto k = raw >= 1.0 ? static_cast<std::size_t>(raw) : std::size_t{1};
    return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(rounds, 1));
}

PerceptronResult strategic_perceptron_run(const LinearStream& stream, double alpha, std::size_t blocks,
                                          std::uint64_t seed) {
    const std::size_t rounds = stream.size();
    if (rounds == 0) throw LinearError("empty stream");
    if (alpha < 0.0) throw LinearError("alpha must be non-negative");
    blocks = std::clamp<std::size_t>(blocks, 1, rounds);
    const auto bounds = block_bounds(rounds, blocks);

    PerceptronResult out;
    Rng rng = make_rng(seed, "probe-schedule");
    for (const auto& [start, end] : bounds) out.probe_rounds.push_back(start + uniform_index(rng, end - start));

    Vec w(stream.dimension, 0.0);
    std::size_t block = 0;
    for (std::size_t t = 0; t < rounds; ++t) {
        if (t == bounds[block].second) ++block;
        const LinearExample& ex = stream.examples[t];
        if (ex.z.size() != stream.dimension) throw LinearError("example dimension mismatch");
        PerceptronRound rec;
        rec.t = t;
        rec.y = ex.y;
        rec.probe = t == out.probe_rounds[block];
        if (rec.probe) {
            // All-positive: the agent reports z truthfully.
            rec.prediction = Label::Positive;
            if (plain_prediction(w, ex.z) != ex.y) {
                for (std::size_t i = 0; i < w.size(); ++i) w[i] += label_int(ex.y) * ex.z[i];
                rec.updated = true;
            }
        } else {
            const Vec x = linear_best_respond(w, alpha, ex.z);
            rec.prediction = shifted_positive(w, alpha, x) ? Label::Positive : Label::Negative;
        }
        if (rec.prediction != ex.y) ++out.mistakes;
        out.rounds.push_back(rec);
    }
    out.w = std::move(w);
    return out;
}

LinearStream margin_stream(std::size_t dimension, std::size_t rounds, double margin, double radius, double noise,
                           std::uint64_t seed) {
    if (dimension == 0) throw LinearError("dimension must be positive");
    if (!(margin >= 0.0 && margin <= radius)) throw LinearError("margin must lie in [0, radius]");
    LinearStream s;
    s.dimension = dimension;
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t t = 0; t < rounds; ++t) {
        LinearExample e;
        e.y = uniform_real(rng) < 0.5 ? Label::Positive : Label::Negative;
        e.z.assign(dimension, 0.0);
        const double along = margin + (radius - margin) * uniform_real(rng);
        const double room = std::sqrt(std::max(0.0, radius * radius - along * along));
        // Orthogonal part: random direction in the remaining coordinates.
        Vec orth(dimension, 0.0);
        double orth_norm = 0.0;
        for (std::size_t i = 1; i < dimension; ++i) {
            orth[i] = gauss(rng);
            orth_norm += orth[i] * orth[i];
        }
        orth_norm = std::sqrt(orth_norm);
        const double len = room * uniform_real(rng);
        e.z[0] = label_int(e.y) * along;
        if (orth_norm > 0.0) {
            for (std::size_t i = 1; i < dimension; ++i) e.z[i] = len * orth[i] / orth_norm;
        }
        s.examples.push_back(std::move(e));
    }
    Rng flip_rng(derive_seed(seed, "noise"));
    for (auto& e : s.examples) {
        if (uniform_real(flip_rng) < noise) e.y = flip(e.y);
    }
    return s;
}

LinearStream parse_stream(std::istream& in) {
    LinearStream s;
    std::string line;
    if (!std::getline(in, line)) throw LinearError("stream file is empty");
    {
        std::stringstream header(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(header, cell, ',')) {
            const std::string expected = col == 0 ? "y" : "z" + std::to_string(col);
            if (cell != expected) throw LinearError("stream header must be y,z1,...,zd");
            ++col;
        }
        if (col < 2) throw LinearError("stream needs at least one feature column");
        s.dimension = col - 1;
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        LinearExample e;
        std::size_t col = 0;
        while (std::getline(row, cell, ',')) {
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size() || cell.empty()) {
                throw LinearError("line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
            if (col == 0) {
                if (value != 1.0 && value != -1.0) throw LinearError("line " + std::to_string(lineno) + ": y must be 1 or -1");
                e.y = value > 0 ? Label::Positive : Label::Negative;
            } else {
                e.z.push_back(value);
            }
            ++col;
        }
        if (e.z.size() != s.dimension) throw LinearError("line " + std::to_string(lineno) + ": wrong column count");
        s.examples.push_back(std::move(e));
    }
    return s;
}

LinearStream load_stream(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LinearError("cannot open stream file " + path);
    return parse_stream(in);
}

void write_stream(std::ostream& out, const LinearStream& stream) {
    out << 'y';
    for (std::size_t i = 1; i <= stream.dimension; ++i) out << ",z" << i;
    out << '\n';
    for (const auto& e : stream.examples) {
        out << label_int(e.y);
        for (double x : e.z) out << ',' << format_number(x);
        out << '\n';
    }
}

}  // namespace stratclass::linear
