#pragma once

#include <cstdint>
#include <vector>

#include "prg/dynamics.hpp"
#include "prg/game.hpp"

namespace prg {

// Regret growth under the exponential (softmax-style) ranking, where the
// induced game is not concave and gradient play can get pinned away from the
// hindsight optimum.  Certified lower bounds on Reg_i^t are computed at
// checkpoints via a 32^k grid plus multi-start refinement; a linear-activation
// companion run on the same instance shows the concave contrast.
struct RegretTraceSpec {
    PublishersGame game; // exponential activation, k <= 3
    std::vector<LearnerSpec> learners{LearnerSpec{}};
    std::uint64_t rounds = 5000;
    std::vector<std::uint64_t> checkpoints; // empty -> log-spaced grid
    double oracle_tolerance = 1e-5;
};

struct PlayerTrace {
    std::vector<double> regret; // Reg_i^t at each checkpoint (lower bounds)
    double slope = 0.0;         // least-squares slope of regret vs t
};

struct RegretTraceResult {
    std::vector<std::uint64_t> checkpoints;
    std::vector<PlayerTrace> sharp;     // the exponential game
    std::vector<PlayerTrace> companion; // same instance, linear activation
};

RegretTraceResult softmax_regret_trace(const RegretTraceSpec& spec, int jobs = 1);

std::vector<std::uint64_t> default_checkpoints(std::uint64_t rounds);
double least_squares_slope(const std::vector<std::uint64_t>& t, const std::vector<double>& y);

} // namespace prg
