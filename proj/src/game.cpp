#include "prg/game.hpp"

#include <cmath>
#include <utility>

#include "prg/errors.hpp"

namespace prg {

bool in_unit_cube(const Point& p) {
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) return false; // NaN fails too
    }
    return true;
}

void clamp_to_cube(Point& p) {
    for (double& v : p) {
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
    }
}

SemiMetric semi_metric_from_string(const std::string& name) {
    if (name == "scaled-squared-euclidean") return SemiMetric::scaled_squared_euclidean;
    if (name == "absolute-1d") return SemiMetric::absolute_1d;
    throw InvalidInput("unknown semi-metric: " + name);
}

std::string to_string(SemiMetric metric) {
    return metric == SemiMetric::scaled_squared_euclidean ? "scaled-squared-euclidean"
                                                          : "absolute-1d";
}

double distance(SemiMetric metric, const Point& a, const Point& b) {
    if (a.size() != b.size()) throw InvalidInput("distance: dimension mismatch");
    if (metric == SemiMetric::absolute_1d) {
        if (a.size() != 1) throw InvalidInput("absolute-1d metric requires k = 1");
        return std::abs(a[0] - b[0]);
    }
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s / static_cast<double>(a.size());
}

PublishersGame make_game(std::size_t n, std::size_t k, SemiMetric metric, Activation activation,
                         DemandDistribution demand, std::vector<Point> initial_docs,
                         std::vector<double> lambdas) {
    PublishersGame g;
    g.n = n;
    g.k = k;
    g.metric = metric;
    g.activation = std::move(activation);
    g.demand = std::move(demand);
    g.initial_docs = std::move(initial_docs);
    g.lambdas = std::move(lambdas);
    validate_game(g);
    return g;
}

void validate_game(const PublishersGame& game) {
    if (game.n < 2) throw InvalidInput("game: need at least two players");
    if (game.k < 1) throw InvalidInput("game: need k >= 1");
    if (game.metric == SemiMetric::absolute_1d && game.k != 1)
        throw InvalidInput("game: absolute-1d metric requires k = 1");
    if (game.demand.atoms.empty()) throw InvalidInput("game: demand needs at least one atom");
    if (game.demand.atoms.size() != game.demand.weights.size())
        throw InvalidInput("game: demand atoms/weights length mismatch");
    double wsum = 0.0;
    for (double w : game.demand.weights) {
        if (!(w > 0.0)) throw InvalidInput("game: demand weights must be strictly positive");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw InvalidInput("game: demand weights must sum to 1");
    for (const Point& a : game.demand.atoms) {
        if (a.size() != game.k) throw InvalidInput("game: demand atom has wrong dimension");
        if (!in_unit_cube(a)) throw InvalidInput("game: demand atom outside the unit cube");
    }
    if (game.initial_docs.size() != game.n)
        throw InvalidInput("game: need one initial document per player");
    for (const Point& p : game.initial_docs) {
        if (p.size() != game.k) throw InvalidInput("game: initial document has wrong dimension");
        if (!in_unit_cube(p)) throw InvalidInput("game: initial document outside the unit cube");
    }
    if (game.lambdas.size() != game.n) throw InvalidInput("game: need one lambda per player");
    for (double l : game.lambdas) {
        if (!(l >= 0.0) || !std::isfinite(l))
            throw InvalidInput("game: lambdas must be finite and non-negative");
    }
}

void validate_profile(const PublishersGame& game, const Profile& x) {
    if (x.size() != game.n) throw InvalidInput("profile: need one document per player");
    for (const Point& p : x) {
        if (p.size() != game.k) throw InvalidInput("profile: document has wrong dimension");
        if (!in_unit_cube(p)) throw InvalidInput("profile: document outside the unit cube");
    }
}

} // namespace prg
