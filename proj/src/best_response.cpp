#include "prg/best_response.hpp"

#include <algorithm>

#include "prg/errors.hpp"
#include "prg/model.hpp"
#include "prg/par.hpp"
#include "prg/rng.hpp"

namespace prg {

namespace {

constexpr int kMaxItersPerStart = 5000;
constexpr std::uint64_t kStartSeed = 0x9e3779b97f4a7c15ULL; // fixed: calls are deterministic

// u_i(., x_-i) as value/gradient callables over a scratch profile.
struct OwnUtility {
    const PublishersGame& game;
    Profile scratch;
    std::size_t i;

    OwnUtility(const PublishersGame& g, const Profile& x, std::size_t player)
        : game(g), scratch(x), i(player) {}

    double value(const Point& y) {
        scratch[i] = y;
        return utility(game, scratch, i);
    }
    Point grad(const Point& y) {
        scratch[i] = y;
        return utility_gradient(game, scratch, i);
    }
};

std::vector<Point> start_list(const PublishersGame& game, const Profile& x, std::size_t i) {
    std::vector<Point> starts;
    starts.push_back(x[i]); // incumbent: the cheap start when certifying near a fixed point
    starts.push_back(game.initial_docs[i]);
    for (const Point& atom : game.demand.atoms) starts.push_back(atom);
    Rng rng(derive_seed(kStartSeed, i));
    for (int r = 0; r < 8; ++r) {
        Point p(game.k);
        for (double& v : p) v = uniform01(rng);
        starts.push_back(std::move(p));
    }
    return starts;
}

BestResponse best_response_one_hot(const PublishersGame& game, const Profile& x, std::size_t i) {
    // With a single information need, squared distances to both the need and
    // the initial document only improve when the orthogonal component is
    // dropped, so the maximizer lies on the segment x0_i -> x_star.
    const Point& x0 = game.initial_docs[i];
    const Point& star = game.demand.atoms[0];
    Point dir(game.k);
    for (std::size_t c = 0; c < game.k; ++c) dir[c] = star[c] - x0[c];

    OwnUtility f(game, x, i);
    Point y(game.k);
    const auto dderiv = [&](double alpha) {
        for (std::size_t c = 0; c < game.k; ++c) y[c] = x0[c] + alpha * dir[c];
        const Point g = f.grad(y);
        double d = 0.0;
        for (std::size_t c = 0; c < game.k; ++c) d += g[c] * dir[c];
        return d;
    };
    const double alpha = bisect_segment_max(dderiv);
    for (std::size_t c = 0; c < game.k; ++c) y[c] = x0[c] + alpha * dir[c];
    clamp_to_cube(y);
    const double v = f.value(y);
    return {std::move(y), v};
}

} // namespace

BestResponse best_response(const PublishersGame& game, const Profile& x, std::size_t i,
                           double tolerance) {
    if (game.metric != SemiMetric::scaled_squared_euclidean)
        throw UnsupportedOperation("best_response: needs the scaled-squared-euclidean metric");
    if (!game.activation.concave())
        throw UnsupportedOperation(
            "best_response: non-concave activation; use best_response_global");
    if (!(tolerance > 0.0)) throw InvalidInput("best_response: tolerance must be positive");

    if (game.demand.one_hot()) return best_response_one_hot(game, x, i);

    OwnUtility f(game, x, i);
    const auto value = [&](const Point& y) { return f.value(y); };
    const auto grad = [&](const Point& y) { return f.grad(y); };

    BestResponse best;
    bool have = false;
    for (const Point& start : start_list(game, x, i)) {
        BestResponse cand;
        auto res = ascend_box(value, grad, start, kMaxItersPerStart, tolerance);
        cand.x = std::move(res.x);
        cand.value = res.value;
        if (!have || cand.value > best.value) {
            best = std::move(cand);
            have = true;
        }
        // Concave objective: the first converged start is globally optimal.
        const Point g = f.grad(best.x);
        double gm2 = 0.0;
        for (std::size_t c = 0; c < game.k; ++c) {
            const bool blocked =
                (best.x[c] <= 0.0 && g[c] < 0.0) || (best.x[c] >= 1.0 && g[c] > 0.0);
            if (!blocked) gm2 += g[c] * g[c];
        }
        if (std::sqrt(gm2) <= tolerance) break;
    }
    return best;
}

BestResponse best_response_global(const PublishersGame& game, const Profile& x, std::size_t i,
                                  double tolerance, int jobs) {
    if (game.metric != SemiMetric::scaled_squared_euclidean)
        throw UnsupportedOperation(
            "best_response_global: needs the scaled-squared-euclidean metric");
    if (game.k > 3)
        throw UnsupportedOperation("best_response_global: coarse grid unsupported for k > 3");
    if (!(tolerance > 0.0)) throw InvalidInput("best_response_global: tolerance must be positive");

    constexpr std::size_t per_axis = 32;
    std::size_t total = 1;
    for (std::size_t c = 0; c < game.k; ++c) total *= per_axis;

    std::vector<double> grid_vals(total);
    const auto grid_point = [&](std::size_t idx) {
        Point p(game.k);
        for (std::size_t c = 0; c < game.k; ++c) {
            p[c] = static_cast<double>(idx % per_axis) / (per_axis - 1);
            idx /= per_axis;
        }
        return p;
    };
    parallel_for(total, jobs, [&](std::size_t idx) {
        OwnUtility f(game, x, i); // per-task scratch
        grid_vals[idx] = f.value(grid_point(idx));
    });
    std::size_t best_idx = 0;
    for (std::size_t idx = 1; idx < total; ++idx)
        if (grid_vals[idx] > grid_vals[best_idx]) best_idx = idx;

    std::vector<Point> starts = start_list(game, x, i);
    starts.push_back(grid_point(best_idx));

    OwnUtility f(game, x, i);
    const auto value = [&](const Point& y) { return f.value(y); };
    const auto grad = [&](const Point& y) { return f.grad(y); };
    BestResponse best{grid_point(best_idx), grid_vals[best_idx]};
    for (const Point& start : starts) {
        auto res = ascend_box(value, grad, start, kMaxItersPerStart, tolerance);
        if (res.value > best.value) best = {std::move(res.x), res.value};
    }
    return best;
}

double epsilon_gap(const PublishersGame& game, const Profile& x, double tolerance, int jobs) {
    validate_profile(game, x);
    // reject unsupported setups here: exceptions must not cross the parallel loop
    if (game.metric != SemiMetric::scaled_squared_euclidean)
        throw UnsupportedOperation("epsilon_gap: needs the scaled-squared-euclidean metric");
    if (!game.activation.concave() && game.k > 3)
        throw UnsupportedOperation("epsilon_gap: non-concave certification needs k <= 3");
    if (!(tolerance > 0.0)) throw InvalidInput("epsilon_gap: tolerance must be positive");
    std::vector<double> gap(game.n);
    parallel_for(game.n, jobs, [&](std::size_t i) {
        const double current = utility(game, x, i);
        const BestResponse br = game.activation.concave()
                                    ? best_response(game, x, i, tolerance)
                                    : best_response_global(game, x, i, tolerance);
        gap[i] = br.value - current;
    });
    double worst = 0.0;
    for (double g : gap) worst = std::max(worst, g);
    return worst;
}

} // namespace prg
