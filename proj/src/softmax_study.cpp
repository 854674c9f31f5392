#include "prg/softmax_study.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prg/best_response.hpp"
#include "prg/errors.hpp"
#include "prg/model.hpp"
#include "prg/par.hpp"
#include "prg/regret.hpp"
#include "prg/rng.hpp"

namespace prg {

std::vector<std::uint64_t> default_checkpoints(std::uint64_t rounds) {
    std::vector<std::uint64_t> cps;
    const double lo = std::log10(std::min<std::uint64_t>(50, rounds));
    const double hi = std::log10(static_cast<double>(rounds));
    const int points = 12;
    for (int i = 0; i < points; ++i) {
        const double f = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
        const std::uint64_t t = static_cast<std::uint64_t>(std::llround(std::pow(10.0, f)));
        if (cps.empty() || t > cps.back()) cps.push_back(std::min(t, rounds));
    }
    if (cps.back() != rounds) cps.push_back(rounds);
    return cps;
}

double least_squares_slope(const std::vector<std::uint64_t>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.size() < 2)
        throw InvalidInput("least_squares_slope: need two aligned points");
    const double n = static_cast<double>(t.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double ti = static_cast<double>(t[i]);
        st += ti;
        sy += y[i];
        stt += ti * ti;
        sty += ti * y[i];
    }
    return (n * sty - st * sy) / (n * stt - st * st);
}

namespace {

constexpr std::size_t kPerAxis = 32;

// Best grid value of the averaged prefix utility at every checkpoint in one
// pass over the opponent-field table per grid point.
std::vector<Point> grid_candidates(const PublishersGame& game, const RegretLedger& ledger,
                                   std::size_t i, const std::vector<std::uint64_t>& cps,
                                   int jobs) {
    const std::size_t s = game.demand.size();
    const std::size_t T = cps.back();
    const std::vector<double> H = opponent_field(game, ledger, i, T);

    std::size_t total = 1;
    for (std::size_t c = 0; c < game.k; ++c) total *= kPerAxis;

    const auto grid_point = [&](std::size_t idx) {
        Point p(game.k);
        for (std::size_t c = 0; c < game.k; ++c) {
            p[c] = static_cast<double>(idx % kPerAxis) / (kPerAxis - 1);
            idx /= kPerAxis;
        }
        return p;
    };

    // values[idx * cps.size() + c]: averaged prefix utility of grid point idx
    std::vector<double> values(total * cps.size());
    parallel_for(total, jobs, [&](std::size_t idx) {
        const Point y = grid_point(idx);
        std::vector<double> G(s), acc(s, 0.0);
        for (std::size_t a = 0; a < s; ++a)
            G[a] = game.activation.value(distance(game.metric, y, game.demand.atoms[a]));
        const double pen =
            game.lambdas[i] * distance(game.metric, y, game.initial_docs[i]);
        std::size_t cp = 0;
        for (std::size_t t = 0; t < T && cp < cps.size(); ++t) {
            for (std::size_t a = 0; a < s; ++a) acc[a] += 1.0 / (G[a] + H[t * s + a]);
            if (t + 1 == cps[cp]) {
                double v = 0.0;
                for (std::size_t a = 0; a < s; ++a)
                    v += game.demand.weights[a] * G[a] * acc[a];
                values[idx * cps.size() + cp] = v / static_cast<double>(t + 1) - pen;
                ++cp;
            }
        }
    });

    std::vector<Point> best(cps.size());
    for (std::size_t cp = 0; cp < cps.size(); ++cp) {
        std::size_t arg = 0;
        double v = values[cp];
        for (std::size_t idx = 1; idx < total; ++idx) {
            if (values[idx * cps.size() + cp] > v) {
                v = values[idx * cps.size() + cp];
                arg = idx;
            }
        }
        best[cp] = grid_point(arg);
    }
    return best;
}

PlayerTrace trace_player_sharp(const PublishersGame& game, const RegretLedger& ledger,
                               std::size_t i, const std::vector<std::uint64_t>& cps, double tol,
                               int jobs) {
    const std::vector<Point> seeds = grid_candidates(game, ledger, i, cps, jobs);
    PlayerTrace trace;
    trace.regret.reserve(cps.size());
    double realized = 0.0;
    std::size_t done = 0;
    for (std::size_t cp = 0; cp < cps.size(); ++cp) {
        const std::uint64_t t = cps[cp];
        for (; done < t; ++done) realized += ledger.utilities[done][i];
        const AveragedOpponentUtility f(game, ledger, i, t);
        const auto value = [&](const Point& y) { return f.value(y); };
        const auto grad = [&](const Point& y) { return f.gradient(y); };

        std::vector<Point> starts{seeds[cp], game.initial_docs[i],
                                  average_profile(ledger, t)[i]};
        for (const Point& atom : game.demand.atoms) starts.push_back(atom);
        Rng rng(derive_seed(0x50f7, i, cp));
        for (int r = 0; r < 8; ++r) {
            Point p(game.k);
            for (double& v : p) v = uniform01(rng);
            starts.push_back(std::move(p));
        }
        double best = -std::numeric_limits<double>::infinity();
        for (const Point& start : starts)
            best = std::max(best, ascend_box(value, grad, start, 5000, tol).value);
        trace.regret.push_back(static_cast<double>(t) * best - realized);
    }
    trace.slope = least_squares_slope(cps, trace.regret);
    return trace;
}

} // namespace

RegretTraceResult softmax_regret_trace(const RegretTraceSpec& spec, int jobs) {
    validate_game(spec.game);
    if (spec.game.activation.family() != ActivationFamily::exponential)
        throw InvalidInput("regret trace: expects the exponential activation");
    if (spec.game.k > 3)
        throw UnsupportedOperation("regret trace: grid oracle unsupported for k > 3");
    if (spec.rounds < 2) throw InvalidInput("regret trace: need at least two rounds");

    RegretTraceResult out;
    out.checkpoints = spec.checkpoints.empty() ? default_checkpoints(spec.rounds)
                                               : spec.checkpoints;
    for (std::uint64_t cp : out.checkpoints)
        if (cp == 0 || cp > spec.rounds)
            throw InvalidInput("regret trace: checkpoints must lie in [1, rounds]");
    if (!std::is_sorted(out.checkpoints.begin(), out.checkpoints.end()))
        throw InvalidInput("regret trace: checkpoints must be ascending");

    const RegretLedger ledger = play_rounds(spec.game, spec.learners, spec.rounds);
    for (std::size_t i = 0; i < spec.game.n; ++i)
        out.sharp.push_back(trace_player_sharp(spec.game, ledger, i, out.checkpoints,
                                               spec.oracle_tolerance, jobs));

    // concave companion: identical ecosystem, linear weight
    PublishersGame companion = spec.game;
    companion.activation = Activation(ActivationFamily::linear,
                                      Activation::default_param(ActivationFamily::linear));
    const RegretLedger led2 = play_rounds(companion, spec.learners, spec.rounds);
    for (std::size_t i = 0; i < companion.n; ++i) {
        PlayerTrace trace;
        for (std::uint64_t t : out.checkpoints)
            trace.regret.push_back(
                hindsight_regret(companion, led2, i, spec.oracle_tolerance, t));
        trace.slope = least_squares_slope(out.checkpoints, trace.regret);
        out.companion.push_back(std::move(trace));
    }
    return out;
}

} // namespace prg
