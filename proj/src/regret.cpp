#include "prg/regret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prg/best_response.hpp"
#include "prg/errors.hpp"
#include "prg/rng.hpp"

namespace prg {

std::vector<double> opponent_field(const PublishersGame& game, const RegretLedger& ledger,
                                   std::size_t i, std::size_t rounds) {
    const std::size_t s = game.demand.size();
    std::vector<double> H(rounds * s, 0.0);
    for (std::size_t t = 0; t < rounds; ++t) {
        const Profile& x = ledger.profiles[t];
        for (std::size_t a = 0; a < s; ++a) {
            double acc = 0.0;
            for (std::size_t j = 0; j < game.n; ++j) {
                if (j == i) continue;
                acc += game.activation.value(distance(game.metric, x[j], game.demand.atoms[a]));
            }
            H[t * s + a] = acc;
        }
    }
    return H;
}

AveragedOpponentUtility::AveragedOpponentUtility(const PublishersGame& game,
                                                 const RegretLedger& ledger, std::size_t i,
                                                 std::size_t rounds)
    : game_(game), i_(i), rounds_(rounds == 0 ? ledger.rounds() : rounds) {
    if (rounds_ == 0 || rounds_ > ledger.rounds())
        throw InvalidInput("hindsight oracle: bad round range");
    field_ = opponent_field(game, ledger, i, rounds_);
}

double AveragedOpponentUtility::value(const Point& y) const {
    const std::size_t s = game_.demand.size();
    double total = 0.0;
    for (std::size_t a = 0; a < s; ++a) {
        const double G = game_.activation.value(distance(game_.metric, y, game_.demand.atoms[a]));
        double acc = 0.0;
        for (std::size_t t = 0; t < rounds_; ++t) acc += 1.0 / (G + field_[t * s + a]);
        total += game_.demand.weights[a] * G * acc;
    }
    return total / static_cast<double>(rounds_) -
           game_.lambdas[i_] * distance(game_.metric, y, game_.initial_docs[i_]);
}

Point AveragedOpponentUtility::gradient(const Point& y) const {
    if (game_.metric != SemiMetric::scaled_squared_euclidean)
        throw UnsupportedOperation("hindsight oracle: needs the scaled-squared-euclidean metric");
    const std::size_t s = game_.demand.size();
    const std::size_t k = game_.k;
    const double inv_k = 1.0 / static_cast<double>(k);
    Point grad(k, 0.0);
    for (std::size_t a = 0; a < s; ++a) {
        const Point& atom = game_.demand.atoms[a];
        const ActivationDerivs ad = game_.activation.eval(distance(game_.metric, y, atom));
        double acc = 0.0; // sum_t H / (G + H)^2
        for (std::size_t t = 0; t < rounds_; ++t) {
            const double H = field_[t * s + a];
            const double den = ad.g + H;
            acc += H / (den * den);
        }
        const double coef = game_.demand.weights[a] * ad.gp * acc /
                            static_cast<double>(rounds_) * 2.0 * inv_k;
        for (std::size_t c = 0; c < k; ++c) grad[c] += coef * (y[c] - atom[c]);
    }
    const double pen = game_.lambdas[i_] * 2.0 * inv_k;
    for (std::size_t c = 0; c < k; ++c) grad[c] -= pen * (y[c] - game_.initial_docs[i_][c]);
    return grad;
}

namespace {

constexpr std::uint64_t kOracleSeed = 0x243f6a8885a308d3ULL;

Point maximize_hindsight(const PublishersGame& game, const AveragedOpponentUtility& f,
                         const RegretLedger& ledger, std::size_t i, double tol) {
    const auto value = [&](const Point& y) { return f.value(y); };
    const auto grad = [&](const Point& y) { return f.gradient(y); };

    if (game.activation.concave() && game.demand.one_hot()) {
        const Point& x0 = game.initial_docs[i];
        const Point& star = game.demand.atoms[0];
        Point dir(game.k), y(game.k);
        for (std::size_t c = 0; c < game.k; ++c) dir[c] = star[c] - x0[c];
        const auto dderiv = [&](double alpha) {
            for (std::size_t c = 0; c < game.k; ++c) y[c] = x0[c] + alpha * dir[c];
            const Point g = f.gradient(y);
            double d = 0.0;
            for (std::size_t c = 0; c < game.k; ++c) d += g[c] * dir[c];
            return d;
        };
        const double alpha = bisect_segment_max(dderiv);
        for (std::size_t c = 0; c < game.k; ++c) y[c] = x0[c] + alpha * dir[c];
        clamp_to_cube(y);
        return y;
    }

    std::vector<Point> starts;
    starts.push_back(average_profile(ledger, f.rounds())[i]); // warm start: own played average
    starts.push_back(game.initial_docs[i]);
    for (const Point& atom : game.demand.atoms) starts.push_back(atom);
    Rng rng(derive_seed(kOracleSeed, i));
    for (int r = 0; r < 8; ++r) {
        Point p(game.k);
        for (double& v : p) v = uniform01(rng);
        starts.push_back(std::move(p));
    }

    if (!game.activation.concave()) {
        if (game.k > 3)
            throw UnsupportedOperation("hindsight oracle: grid search unsupported for k > 3");
        constexpr std::size_t per_axis = 32;
        std::size_t total = 1;
        for (std::size_t c = 0; c < game.k; ++c) total *= per_axis;
        Point best;
        double best_val = -std::numeric_limits<double>::infinity();
        Point p(game.k);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rest = idx;
            for (std::size_t c = 0; c < game.k; ++c) {
                p[c] = static_cast<double>(rest % per_axis) / (per_axis - 1);
                rest /= per_axis;
            }
            const double v = f.value(p);
            if (v > best_val) {
                best_val = v;
                best = p;
            }
        }
        starts.push_back(best);
    }

    Point best;
    double best_val = -std::numeric_limits<double>::infinity();
    for (const Point& start : starts) {
        auto res = ascend_box(value, grad, start, 5000, tol);
        if (res.value > best_val) {
            best_val = res.value;
            best = std::move(res.x);
        }
        if (game.activation.concave()) {
            // any converged start is globally optimal for a concave objective
            const Point g = f.gradient(best);
            double gm2 = 0.0;
            for (std::size_t c = 0; c < game.k; ++c) {
                const bool blocked =
                    (best[c] <= 0.0 && g[c] < 0.0) || (best[c] >= 1.0 && g[c] > 0.0);
                if (!blocked) gm2 += g[c] * g[c];
            }
            if (std::sqrt(gm2) <= tol) break;
        }
    }
    return best;
}

} // namespace

double hindsight_regret(const PublishersGame& game, const RegretLedger& ledger, std::size_t i,
                        double oracle_tolerance, std::size_t rounds) {
    if (rounds == 0) rounds = ledger.rounds();
    if (rounds == 0 || rounds > ledger.rounds())
        throw InvalidInput("hindsight_regret: bad round range");
    if (i >= game.n) throw InvalidInput("hindsight_regret: bad player index");
    if (!(oracle_tolerance > 0.0))
        throw InvalidInput("hindsight_regret: tolerance must be positive");

    const AveragedOpponentUtility f(game, ledger, i, rounds);
    const Point y = maximize_hindsight(game, f, ledger, i, oracle_tolerance);
    double realized = 0.0;
    for (std::size_t t = 0; t < rounds; ++t) realized += ledger.utilities[t][i];
    return static_cast<double>(rounds) * f.value(y) - realized;
}

double average_regret_at_T(const PublishersGame& game, const RegretLedger& ledger, std::size_t T,
                           double oracle_tolerance) {
    if (T == 0 || T > ledger.rounds()) throw InvalidInput("average_regret_at_T: bad T");
    double sum = 0.0;
    for (std::size_t i = 0; i < game.n; ++i)
        sum += hindsight_regret(game, ledger, i, oracle_tolerance, T);
    return sum / (static_cast<double>(T) * static_cast<double>(game.n));
}

} // namespace prg
