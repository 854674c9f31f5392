#include "prg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prg/best_response.hpp"
#include "prg/errors.hpp"
#include "prg/model.hpp"
#include "prg/regret.hpp"

namespace prg {

namespace {

std::vector<LearnerSpec> expand_learners(const PublishersGame& game,
                                         const std::vector<LearnerSpec>& learners) {
    if (learners.empty()) return std::vector<LearnerSpec>(game.n, LearnerSpec{});
    if (learners.size() == 1) return std::vector<LearnerSpec>(game.n, learners[0]);
    if (learners.size() != game.n)
        throw InvalidInput("dynamics: need zero, one, or one-per-player learner specs");
    return learners;
}

void check_finite(const RoundEval& eval, std::uint64_t round) {
    for (std::size_t i = 0; i < eval.utilities.size(); ++i) {
        if (!std::isfinite(eval.utilities[i]))
            throw AbortedRun("dynamics: non-finite utility for player " + std::to_string(i) +
                             " at round " + std::to_string(round));
        for (double g : eval.gradients[i])
            if (!std::isfinite(g))
                throw AbortedRun("dynamics: non-finite gradient for player " +
                                 std::to_string(i) + " at round " + std::to_string(round));
    }
}

Profile divide(const Profile& sums, double t) {
    Profile avg = sums;
    for (Point& p : avg)
        for (double& v : p) v /= t;
    return avg;
}

} // namespace

DynamicsResult run_dynamics(const PublishersGame& game, const DynamicsConfig& config) {
    return run_dynamics(game, config, game.initial_docs);
}

DynamicsResult run_dynamics(const PublishersGame& game, const DynamicsConfig& config,
                            const Profile& start) {
    validate_game(game);
    validate_profile(game, start);
    if (!(config.epsilon > 0.0)) throw InvalidInput("dynamics: epsilon must be positive");
    if (config.max_rounds == 0) throw InvalidInput("dynamics: max_rounds must be positive");
    if (config.check_every == 0) throw InvalidInput("dynamics: check_every must be positive");
    const std::vector<LearnerSpec> specs = expand_learners(game, config.learners);
    const double tol = config.resolved_tolerance();

    std::vector<LearnerState> states;
    states.reserve(game.n);
    for (std::size_t i = 0; i < game.n; ++i) states.push_back(learner_init(specs[i], start[i]));

    DynamicsResult out;
    Profile sums(game.n, Point(game.k, 0.0));
    Profile current(game.n);

    for (std::uint64_t t = 1; t <= config.max_rounds; ++t) {
        for (std::size_t i = 0; i < game.n; ++i) current[i] = states[i].action;
        const RoundEval eval = evaluate_round(game, current);
        check_finite(eval, t);
        for (std::size_t i = 0; i < game.n; ++i)
            for (std::size_t c = 0; c < game.k; ++c) sums[i][c] += current[i][c];
        if (config.record_ledger) out.ledger.append(current, eval.utilities);
        for (std::size_t i = 0; i < game.n; ++i)
            learner_step(specs[i], states[i], eval.gradients[i]);

        if (t % config.check_every == 0 || t == config.max_rounds) {
            const Profile avg = divide(sums, static_cast<double>(t));
            const double gap = epsilon_gap(game, avg, tol, config.jobs);
            if (gap <= config.epsilon || t == config.max_rounds) {
                out.report.converged = gap <= config.epsilon;
                out.report.rounds = t;
                out.report.gap = gap;
                out.report.certified_epsilon = gap + tol;
                out.report.final_average = avg;
                out.report.final_profile = current;
                out.report.publishers_welfare = publishers_welfare(game, avg);
                out.report.users_welfare = users_welfare(game, avg);
                if (config.last_iterate_diagnostic)
                    out.report.last_iterate_gap = epsilon_gap(game, current, tol, config.jobs);
                return out;
            }
        }
    }
    // unreachable: the t == max_rounds branch always returns
    throw AbortedRun("dynamics: fell through the round loop");
}

RegretLedger play_rounds(const PublishersGame& game, const std::vector<LearnerSpec>& learners,
                         std::uint64_t rounds) {
    validate_game(game);
    if (rounds == 0) throw InvalidInput("play_rounds: need at least one round");
    const std::vector<LearnerSpec> specs = expand_learners(game, learners);

    std::vector<LearnerState> states;
    states.reserve(game.n);
    for (std::size_t i = 0; i < game.n; ++i)
        states.push_back(learner_init(specs[i], game.initial_docs[i]));

    RegretLedger ledger;
    Profile current(game.n);
    for (std::uint64_t t = 1; t <= rounds; ++t) {
        for (std::size_t i = 0; i < game.n; ++i) current[i] = states[i].action;
        const RoundEval eval = evaluate_round(game, current);
        check_finite(eval, t);
        ledger.append(current, eval.utilities);
        for (std::size_t i = 0; i < game.n; ++i)
            learner_step(specs[i], states[i], eval.gradients[i]);
    }
    return ledger;
}

double theorem_epsilon_from_regrets(const std::vector<double>& regrets, std::uint64_t T) {
    if (T == 0) throw InvalidInput("theorem_epsilon: T must be positive");
    double sum = 0.0;
    for (double r : regrets) sum += std::max(r, 0.0);
    return sum / static_cast<double>(T);
}

double theorem_epsilon(const PublishersGame& game, const RegretLedger& ledger,
                       double oracle_tolerance) {
    std::vector<double> regrets(game.n);
    for (std::size_t i = 0; i < game.n; ++i)
        regrets[i] = hindsight_regret(game, ledger, i, oracle_tolerance);
    return theorem_epsilon_from_regrets(regrets, ledger.rounds());
}

double heterogeneous_stop_bound(const std::vector<double>& regrets,
                                const std::vector<std::uint64_t>& stop_times,
                                const std::vector<double>& lambdas) {
    if (regrets.size() != stop_times.size() || regrets.size() != lambdas.size())
        throw InvalidInput("heterogeneous_stop_bound: length mismatch");
    const std::uint64_t t_max = *std::max_element(stop_times.begin(), stop_times.end());
    double sum = 0.0;
    for (std::size_t j = 0; j < regrets.size(); ++j) {
        sum += std::max(regrets[j], 0.0) +
               (1.0 + lambdas[j]) * static_cast<double>(t_max - stop_times[j]);
    }
    return sum / static_cast<double>(t_max);
}

HeterogeneousResult run_heterogeneous_stops(const PublishersGame& game,
                                            const std::vector<LearnerSpec>& learners,
                                            const std::vector<std::uint64_t>& stop_times,
                                            double oracle_tolerance) {
    validate_game(game);
    if (stop_times.size() != game.n)
        throw InvalidInput("heterogeneous stops: need one stop time per player");
    for (std::uint64_t t : stop_times)
        if (t == 0) throw InvalidInput("heterogeneous stops: stop times must be positive");
    const std::vector<LearnerSpec> specs = expand_learners(game, learners);
    const std::uint64_t t_max = *std::max_element(stop_times.begin(), stop_times.end());

    std::vector<LearnerState> states;
    states.reserve(game.n);
    for (std::size_t i = 0; i < game.n; ++i)
        states.push_back(learner_init(specs[i], game.initial_docs[i]));

    HeterogeneousResult out;
    Profile sums(game.n, Point(game.k, 0.0));
    Profile committed(game.n); // filled as players stop
    Profile current(game.n);

    for (std::uint64_t t = 1; t <= t_max; ++t) {
        for (std::size_t i = 0; i < game.n; ++i)
            current[i] = t <= stop_times[i] ? states[i].action : committed[i];
        const RoundEval eval = evaluate_round(game, current);
        check_finite(eval, t);
        for (std::size_t i = 0; i < game.n; ++i)
            for (std::size_t c = 0; c < game.k; ++c) sums[i][c] += current[i][c];
        out.ledger.append(current, eval.utilities);
        for (std::size_t i = 0; i < game.n; ++i) {
            if (t <= stop_times[i]) learner_step(specs[i], states[i], eval.gradients[i]);
            if (t == stop_times[i]) {
                committed[i] = Point(game.k);
                for (std::size_t c = 0; c < game.k; ++c)
                    committed[i][c] = sums[i][c] / static_cast<double>(t);
            }
        }
    }

    out.committed = committed;
    out.regrets.resize(game.n);
    for (std::size_t i = 0; i < game.n; ++i)
        out.regrets[i] = hindsight_regret(game, out.ledger, i, oracle_tolerance, stop_times[i]);
    out.bound = heterogeneous_stop_bound(out.regrets, stop_times, game.lambdas);
    out.certified_gap = epsilon_gap(game, committed, oracle_tolerance);
    return out;
}

} // namespace prg
