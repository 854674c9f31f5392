#include "prg/model.hpp"

#include <cstddef>

#include "prg/errors.hpp"

namespace prg {

namespace {

void require_differentiable_metric(const PublishersGame& game, const char* op) {
    if (game.metric != SemiMetric::scaled_squared_euclidean)
        throw UnsupportedOperation(std::string(op) +
                                   ": gradients need the scaled-squared-euclidean metric");
}

} // namespace

std::vector<double> rank(const PublishersGame& game, const Profile& x, const Point& x_star) {
    std::vector<double> g(game.n);
    double sum = 0.0;
    for (std::size_t j = 0; j < game.n; ++j) {
        g[j] = game.activation.value(distance(game.metric, x[j], x_star));
        sum += g[j];
    }
    for (double& v : g) v /= sum;
    return g;
}

double expected_exposure(const PublishersGame& game, const Profile& x, std::size_t i) {
    double e = 0.0;
    for (std::size_t s = 0; s < game.demand.size(); ++s) {
        e += game.demand.weights[s] * rank(game, x, game.demand.atoms[s])[i];
    }
    return e;
}

double utility(const PublishersGame& game, const Profile& x, std::size_t i) {
    return expected_exposure(game, x, i) -
           game.lambdas[i] * distance(game.metric, x[i], game.initial_docs[i]);
}

Point utility_gradient(const PublishersGame& game, const Profile& x, std::size_t i) {
    require_differentiable_metric(game, "utility_gradient");
    const double inv_k = 1.0 / static_cast<double>(game.k);
    Point grad(game.k, 0.0);
    for (std::size_t s = 0; s < game.demand.size(); ++s) {
        const Point& atom = game.demand.atoms[s];
        double S = 0.0, gi = 0.0, gpi = 0.0;
        for (std::size_t j = 0; j < game.n; ++j) {
            const double d = distance(game.metric, x[j], atom);
            if (j == i) {
                const ActivationDerivs ad = game.activation.eval(d);
                gi = ad.g;
                gpi = ad.gp;
                S += ad.g;
            } else {
                S += game.activation.value(d);
            }
        }
        // d r_i / d x_i = g'(d_i) (S - g_i) / S^2 * (2/k)(x_i - atom)
        const double coef = game.demand.weights[s] * gpi * (S - gi) / (S * S) * 2.0 * inv_k;
        for (std::size_t c = 0; c < game.k; ++c) grad[c] += coef * (x[i][c] - atom[c]);
    }
    const double pen = game.lambdas[i] * 2.0 * inv_k;
    for (std::size_t c = 0; c < game.k; ++c) grad[c] -= pen * (x[i][c] - game.initial_docs[i][c]);
    return grad;
}

double publishers_welfare(const PublishersGame& game, const Profile& x) {
    double w = 0.0;
    for (std::size_t i = 0; i < game.n; ++i) w += utility(game, x, i);
    return w;
}

double users_welfare(const PublishersGame& game, const Profile& x) {
    double mismatch = 0.0;
    for (std::size_t s = 0; s < game.demand.size(); ++s) {
        const Point& atom = game.demand.atoms[s];
        const std::vector<double> r = rank(game, x, atom);
        double m = 0.0;
        for (std::size_t i = 0; i < game.n; ++i)
            m += distance(game.metric, x[i], atom) * r[i];
        mismatch += game.demand.weights[s] * m;
    }
    return 1.0 - mismatch;
}

double social_objective(const PublishersGame& game, const Profile& x) {
    return publishers_welfare(game, x) / static_cast<double>(game.n);
}

RoundEval evaluate_round(const PublishersGame& game, const Profile& x, bool with_gradients) {
    if (with_gradients) require_differentiable_metric(game, "evaluate_round");
    const std::size_t n = game.n, k = game.k;
    const double inv_k = 1.0 / static_cast<double>(k);

    RoundEval out;
    out.utilities.assign(n, 0.0);
    if (with_gradients) out.gradients.assign(n, Point(k, 0.0));

    std::vector<double> g(n), gp(n);
    for (std::size_t s = 0; s < game.demand.size(); ++s) {
        const Point& atom = game.demand.atoms[s];
        const double w = game.demand.weights[s];
        double S = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const ActivationDerivs ad = game.activation.eval(distance(game.metric, x[j], atom));
            g[j] = ad.g;
            gp[j] = ad.gp;
            S += ad.g;
        }
        for (std::size_t i = 0; i < n; ++i) {
            out.utilities[i] += w * g[i] / S;
            if (with_gradients) {
                const double coef = w * gp[i] * (S - g[i]) / (S * S) * 2.0 * inv_k;
                Point& gr = out.gradients[i];
                for (std::size_t c = 0; c < k; ++c) gr[c] += coef * (x[i][c] - atom[c]);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = game.lambdas[i];
        out.utilities[i] -= lam * distance(game.metric, x[i], game.initial_docs[i]);
        if (with_gradients) {
            const double pen = lam * 2.0 * inv_k;
            Point& gr = out.gradients[i];
            for (std::size_t c = 0; c < k; ++c)
                gr[c] -= pen * (x[i][c] - game.initial_docs[i][c]);
        }
    }
    return out;
}

} // namespace prg
