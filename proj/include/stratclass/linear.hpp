#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratclass/policies.hpp"

// Strategic online linear classification with ℓ2-bounded manipulation.
namespace stratclass::linear {

class LinearError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

struct LinearExample {
    Vec z;  // true features
    Label y = Label::Negative;
};

struct LinearStream {
    std::size_t dimension = 0;
    std::vector<LinearExample> examples;

    std::size_t size() const { return examples.size(); }
    // R = max ‖z‖₂.
    double radius() const;
};

// sgn(w·x/‖w‖ − α) with sgn(0) = +1; all-negative when w = 0.
bool shifted_positive(const Vec& w, double alpha, const Vec& x);

// Minimum-distance move into the positive region of the shifted classifier
// when that distance is at most α; otherwise stay. w = 0 never moves.
Vec linear_best_respond(const Vec& w, double alpha, const Vec& z);

// Σ max{0, 1 − y (z·w*)} over the unmanipulated examples.
double hinge_loss(const Vec& w_star, const LinearStream& stream);

struct PerceptronRound {
    std::size_t t = 0;
    bool probe = false;
    Label y = Label::Negative;
    Label prediction = Label::Negative;
    bool updated = false;
};

struct PerceptronResult {
    std::size_t mistakes = 0;
    Vec w;  // final weights
    std::vector<std::size_t> probe_rounds;
    std::vector<PerceptronRound> rounds;
};

// Default block count ⌈√T · R · ‖w*‖⌉ clipped to [1, T].
std::size_t default_perceptron_blocks(std::size_t rounds, double radius, double w_star_norm);

// One uniformly drawn probe round per block plays the all-positive
// classifier; the probed true example then drives a perceptron step
// (update iff w = 0 and y = +1, or sgn(w·z) ≠ y). Other rounds play the
// α-shifted classifier of the current w against best-responding agents.
PerceptronResult strategic_perceptron_run(const LinearStream& stream, double alpha, std::size_t blocks,
                                          std::uint64_t seed);

// Stream whose labels come from sgn(w*·z) with |w*·z| ≥ margin·‖w*‖ and
// ‖z‖ ≤ radius, w* = e_1; then each label flips with probability noise.
LinearStream margin_stream(std::size_t dimension, std::size_t rounds, double margin, double radius, double noise,
                           std::uint64_t seed);

// CSV: header y,z1,...,zd then one example per row with y ∈ {-1, 1}.
LinearStream parse_stream(std::istream& in);
LinearStream load_stream(const std::string& path);
void write_stream(std::ostream& out, const LinearStream& stream);

}  // namespace stratclass::linear
