#pragma once

#include <vector>

#include "prg/game.hpp"

namespace prg {

// Share of attention player i receives when the realized information need is
// x_star: r_i = g(d(x_i, x_star)) / sum_j g(d(x_j, x_star)).
std::vector<double> rank(const PublishersGame& game, const Profile& x, const Point& x_star);

// E_{x* ~ demand} [ r_i(x; x*) ].
double expected_exposure(const PublishersGame& game, const Profile& x, std::size_t i);

// u_i(x) = expected exposure - lambda_i * d(x_i, x0_i); bounded in [-lambda_i, 1].
double utility(const PublishersGame& game, const Profile& x, std::size_t i);

// Analytic gradient of u_i with respect to x_i.  Requires the
// scaled-squared-euclidean metric (throws UnsupportedOperation otherwise).
Point utility_gradient(const PublishersGame& game, const Profile& x, std::size_t i);

// Sum over players of u_i.
double publishers_welfare(const PublishersGame& game, const Profile& x);

// 1 - E_{x*} [ sum_i d(x_i, x*) r_i(x; x*) ], in [0, 1]; higher = results
// closer to what was asked for.
double users_welfare(const PublishersGame& game, const Profile& x);

// (1/n) sum_i u_i.
double social_objective(const PublishersGame& game, const Profile& x);

// One pass over the profile producing every player's utility and gradient;
// what the dynamics loop calls each round.  Gradients require the
// scaled-squared-euclidean metric.
struct RoundEval {
    std::vector<double> utilities; // n
    std::vector<Point> gradients;  // n x k
};

RoundEval evaluate_round(const PublishersGame& game, const Profile& x, bool with_gradients = true);

} // namespace prg
