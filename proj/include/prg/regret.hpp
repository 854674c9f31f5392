#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prg/game.hpp"
#include "prg/ledger.hpp"

namespace prg {

// Opponent weight mass per (round, atom) from player i's point of view:
// H[t*s + a] = sum_{j != i} g(d(x_j^(t), atom_a)).  The hindsight objective
// only touches opponents through this table.
std::vector<double> opponent_field(const PublishersGame& game, const RegretLedger& ledger,
                                   std::size_t i, std::size_t rounds);

// Player i's utility against the empirical opponent play over the first T
// rounds, averaged per round:
//   f(y) = (1/T) sum_t sum_a w_a G_a(y) / (G_a(y) + H[t,a]) - lambda_i d(y, x0_i)
// Concave whenever the activation is; maximizing it is the hindsight oracle.
class AveragedOpponentUtility {
  public:
    // rounds = 0 takes the whole ledger
    AveragedOpponentUtility(const PublishersGame& game, const RegretLedger& ledger, std::size_t i,
                            std::size_t rounds);

    double value(const Point& y) const;
    Point gradient(const Point& y) const;
    std::size_t rounds() const { return rounds_; }

  private:
    const PublishersGame& game_;
    std::size_t i_;
    std::size_t rounds_;
    std::vector<double> field_; // rounds_ x s, round-major
};

// External regret of player i over the first T rounds (0 = whole ledger):
// max_y sum_t u_i(y, x_-i^(t)) - sum_t u_i(x^(t)).  Concave activations use
// the exact oracle (segment bisection / multi-start ascent); the exponential
// family falls back to grid-plus-multi-start and the result is a certified
// lower bound.  Always >= -T * oracle_tolerance.
double hindsight_regret(const PublishersGame& game, const RegretLedger& ledger, std::size_t i,
                        double oracle_tolerance, std::size_t rounds = 0);

// (1/(T n)) sum_i Reg_i^T -- the per-round, per-player audit statistic.
double average_regret_at_T(const PublishersGame& game, const RegretLedger& ledger, std::size_t T,
                           double oracle_tolerance);

} // namespace prg
