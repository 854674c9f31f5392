#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "prg/activation.hpp"

namespace prg {

// A document / information need is a point in the unit cube [0,1]^k.
using Point = std::vector<double>;
// One action per player.
using Profile = std::vector<Point>;

bool in_unit_cube(const Point& p);
void clamp_to_cube(Point& p);

enum class SemiMetric { scaled_squared_euclidean, absolute_1d };

SemiMetric semi_metric_from_string(const std::string& name);
std::string to_string(SemiMetric metric);

// d : [0,1]^k x [0,1]^k -> [0,1].
//   scaled_squared_euclidean   (1/k) * ||a - b||^2      (strictly bi-convex)
//   absolute_1d                |a - b|, k = 1 only      (kept for the
//                               non-concavity counterexample; gradient-based
//                               code refuses it)
double distance(SemiMetric metric, const Point& a, const Point& b);

// Finitely supported distribution of information needs.
struct DemandDistribution {
    std::vector<Point> atoms;    // s points in [0,1]^k
    std::vector<double> weights; // strictly positive, sums to 1

    std::size_t size() const { return atoms.size(); }
    bool one_hot() const { return atoms.size() == 1; }
};

// n players, each with an initial document and a private weight lambda_i on
// the cost of moving away from it.  Utilities, ranking and welfare live in
// model.hpp; this struct is the immutable description of one game.
struct PublishersGame {
    std::size_t n = 0;
    std::size_t k = 0;
    SemiMetric metric = SemiMetric::scaled_squared_euclidean;
    Activation activation{ActivationFamily::linear, 1.0 + 1e-5};
    DemandDistribution demand;
    std::vector<Point> initial_docs; // n points
    std::vector<double> lambdas;     // n non-negative weights

    double lambda(std::size_t i) const { return lambdas[i]; }
};

// Validates every invariant (dimensions, cube membership, weight simplex,
// lambda >= 0, n >= 2, metric/k compatibility) and throws InvalidInput with
// the offending field named.
PublishersGame make_game(std::size_t n, std::size_t k, SemiMetric metric, Activation activation,
                         DemandDistribution demand, std::vector<Point> initial_docs,
                         std::vector<double> lambdas);

void validate_game(const PublishersGame& game);
void validate_profile(const PublishersGame& game, const Profile& x);

} // namespace prg
