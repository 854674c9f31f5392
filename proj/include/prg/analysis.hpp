#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prg/game.hpp"

namespace prg {

// --- concavity audit ---------------------------------------------------------

struct ConcavityWitness {
    std::string kind; // "own-concavity" or "opponent-convexity"
    std::size_t player = 0;
    std::size_t atom = 0; // conditioning information need (convexity tests)
    Profile base;         // full profile context of the violation
    Point p, q;           // segment endpoints (player's doc, or flattened opponents)
    double violation = 0.0;
};

struct ConcavityVerdict {
    bool activation_concave = false; // g'' <= 1e-12 on a 10^4-point grid
    std::uint64_t samples = 0;
    std::uint64_t own_concavity_violations = 0;      // u_i midpoint-concave in x_i
    std::uint64_t opponent_convexity_violations = 0; // r_i midpoint-convex in x_-i
    std::optional<ConcavityWitness> witness;         // lowest-index violating sample
};

// Randomized midpoint tests at tolerance 1e-9, `samples` of each kind, with
// per-index substreams so the verdict is independent of jobs.
ConcavityVerdict audit_concavity(const PublishersGame& game, std::uint64_t samples,
                                 std::uint64_t seed, int jobs = 1);

// --- the non-concavity counterexample ----------------------------------------

// Smallest player count that makes the one-dimensional exposure
// f(a) = g(a) / (g(a) + (n-1) g(0)) strictly convex at a_hat:
// the least integer > 2 g'(a_hat)^2 / (g''(a_hat) g(0)) + 1, and >= 2.
std::size_t counterexample_player_count(const Activation& act, double a_hat);

// f''(a_hat) for that construction: C (g''(C + g) - 2 g'^2) / (C + g)^3 with
// C = (n-1) g(0).  Positive proves the induced game is not concave.
double counterexample_second_derivative(const Activation& act, std::size_t n, double a_hat);

// The witness game itself: k = 1, absolute-value metric, a single information
// need at 0, every initial document at 1.  Requires g''(a_hat) > 0.
PublishersGame build_counterexample(const Activation& act, double a_hat);

// --- symmetric equilibria ------------------------------------------------------

// n identical players sharing an initial document at distance C1 from a single
// information need.  The equilibrium moves every player a fraction alpha of
// the way toward the need.
struct SymmetricInstance {
    std::size_t n = 2;
    double c1 = 0.5;     // d(x0, x_star), in (0, 1]
    double lambda = 0.5; // > 0
    Activation activation{ActivationFamily::linear, 1.0 + 1e-5};
};

void validate_symmetric_instance(const SymmetricInstance& inst);

// First-order condition along the segment; strictly increasing in alpha with
// psi(0) < 0 < psi(1), so the equilibrium fraction is its unique root.
double psi_eval(const SymmetricInstance& inst, double alpha);

struct SymmetricEquilibrium {
    double alpha_eq = 0.0;
    double users_welfare = 0.0; // 1 - (1 - alpha_eq)^2 C1
};

SymmetricEquilibrium symmetric_equilibrium(const SymmetricInstance& inst, double tol = 1e-12);

// Users' welfare across parameter grids: strictly decreasing in lambda and n;
// k never enters the scalar equation, so that column is constant by
// construction and reported as such.
struct WelfareMonotonicityReport {
    std::vector<double> lambda_grid, v_of_lambda;
    std::vector<std::size_t> n_grid;
    std::vector<double> v_of_n;
    std::vector<std::size_t> k_grid;
    std::vector<double> v_of_k;
    bool decreasing_in_lambda = false;
    bool decreasing_in_n = false;
    bool constant_in_k = false;
};

WelfareMonotonicityReport symmetric_welfare_monotonicity(const SymmetricInstance& base,
                                                         const std::vector<double>& lambda_grid,
                                                         const std::vector<std::size_t>& n_grid,
                                                         const std::vector<std::size_t>& k_grid);

// Embeds a SymmetricInstance as a full k-dimensional game: the need at the
// origin, every initial document at (sqrt(C1), ..., sqrt(C1)).
PublishersGame symmetric_game(const SymmetricInstance& inst, std::size_t k);

// Fraction of the way from x0 to x_star a document has moved (projection onto
// the segment).
double alpha_of(const Point& x0, const Point& x_star, const Point& doc);

} // namespace prg
