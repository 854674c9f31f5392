#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "prg/game.hpp"
#include "prg/learner.hpp"
#include "prg/ledger.hpp"

namespace prg {

using Trajectory = RegretLedger;

struct DynamicsConfig {
    std::vector<LearnerSpec> learners; // empty -> defaults; one shared; or one per player
    double epsilon = 1e-4;
    std::uint64_t max_rounds = 200000;
    std::uint64_t check_every = 10;
    double oracle_tolerance = 0.0; // 0 -> epsilon / 10
    bool record_ledger = true;     // sweeps turn this off to bound memory
    bool last_iterate_diagnostic = true;
    int jobs = 1; // threads for the certifier's per-player best responses

    double resolved_tolerance() const {
        return oracle_tolerance > 0.0 ? oracle_tolerance : epsilon / 10.0;
    }
};

struct ConvergenceReport {
    bool converged = false;
    std::uint64_t rounds = 0;
    double gap = std::numeric_limits<double>::infinity(); // measured at the averaged profile
    double certified_epsilon = std::numeric_limits<double>::infinity(); // gap + oracle tol
    double last_iterate_gap = std::numeric_limits<double>::quiet_NaN();
    Profile final_average;
    Profile final_profile; // last played iterate
    double publishers_welfare = 0.0;
    double users_welfare = 0.0;
};

struct DynamicsResult {
    ConvergenceReport report;
    RegretLedger ledger; // empty when record_ledger is off
};

// Simultaneous online play from the initial documents: every round each
// player observes the gradient of her own utility at the joint profile and
// updates.  Every check_every rounds the running average is certified with
// epsilon_gap; the run stops as converged once the measured gap <= epsilon.
// Exhausting max_rounds is a structured non-converged result, not an error;
// non-finite numerics abort with AbortedRun.
DynamicsResult run_dynamics(const PublishersGame& game, const DynamicsConfig& config);
DynamicsResult run_dynamics(const PublishersGame& game, const DynamicsConfig& config,
                            const Profile& start);

// Exactly T rounds of play, no certification (regret audits and traces).
RegretLedger play_rounds(const PublishersGame& game, const std::vector<LearnerSpec>& learners,
                         std::uint64_t rounds);

// epsilon_T = sum_j max(Reg_j^T, 0) / T: a certified bound on how far the
// averaged profile is from equilibrium, valid for any no-regret play.
double theorem_epsilon_from_regrets(const std::vector<double>& regrets, std::uint64_t T);
double theorem_epsilon(const PublishersGame& game, const RegretLedger& ledger,
                       double oracle_tolerance);

// Heterogeneous stopping: player j learns for stop_times[j] rounds and then
// commits to the average of her own play so far, until everyone has stopped.
struct HeterogeneousResult {
    Profile committed;           // per-player averages at their own stop times
    std::vector<double> regrets; // Reg_j over player j's learning prefix
    double bound = 0.0;          // (1/T_max) sum_j [Reg_j^+ + (1 + lambda_j)(T_max - T_j)]
    double certified_gap = 0.0;  // epsilon_gap at the committed profile
    RegretLedger ledger;
};

double heterogeneous_stop_bound(const std::vector<double>& regrets,
                                const std::vector<std::uint64_t>& stop_times,
                                const std::vector<double>& lambdas);

HeterogeneousResult run_heterogeneous_stops(const PublishersGame& game,
                                            const std::vector<LearnerSpec>& learners,
                                            const std::vector<std::uint64_t>& stop_times,
                                            double oracle_tolerance);

} // namespace prg
