#include "prg/analysis.hpp"

#include <cmath>

#include "prg/errors.hpp"
#include "prg/model.hpp"
#include "prg/par.hpp"
#include "prg/rng.hpp"

namespace prg {

namespace {

constexpr double kMidpointTol = 1e-9;
constexpr std::size_t kCurvatureGrid = 10000;

Point random_point(Rng& rng, std::size_t k) {
    Point p(k);
    for (double& v : p) v = uniform01(rng);
    return p;
}

struct SampleOutcome {
    int own_violation = 0;
    int opp_violation = 0;
    std::optional<ConcavityWitness> witness;
};

SampleOutcome run_sample(const PublishersGame& game, std::uint64_t seed, std::uint64_t idx) {
    Rng rng(derive_seed(seed, idx));
    SampleOutcome out;
    const std::size_t n = game.n, k = game.k;

    // u_i midpoint-concave in the player's own document
    {
        const std::size_t i = static_cast<std::size_t>(rng() % n);
        Profile x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = random_point(rng, k);
        const Point p = random_point(rng, k), q = random_point(rng, k);
        Point mid(k);
        for (std::size_t c = 0; c < k; ++c) mid[c] = 0.5 * (p[c] + q[c]);
        x[i] = p;
        const double up = utility(game, x, i);
        x[i] = q;
        const double uq = utility(game, x, i);
        x[i] = mid;
        const double um = utility(game, x, i);
        if (um < 0.5 * (up + uq) - kMidpointTol) {
            out.own_violation = 1;
            ConcavityWitness w;
            w.kind = "own-concavity";
            w.player = i;
            w.base = x;
            w.p = p;
            w.q = q;
            w.violation = 0.5 * (up + uq) - um;
            out.witness = std::move(w);
        }
    }

    // r_i midpoint-convex in the opponents, conditioned on one information need
    {
        const std::size_t i = static_cast<std::size_t>(rng() % n);
        const std::size_t a = static_cast<std::size_t>(rng() % game.demand.size());
        const Point& atom = game.demand.atoms[a];
        Profile xp(n), xq(n), xm(n);
        const Point own = random_point(rng, k);
        xp[i] = xq[i] = xm[i] = own;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            xp[j] = random_point(rng, k);
            xq[j] = random_point(rng, k);
            xm[j] = Point(k);
            for (std::size_t c = 0; c < k; ++c) xm[j][c] = 0.5 * (xp[j][c] + xq[j][c]);
        }
        const double rp = rank(game, xp, atom)[i];
        const double rq = rank(game, xq, atom)[i];
        const double rm = rank(game, xm, atom)[i];
        if (rm > 0.5 * (rp + rq) + kMidpointTol) {
            out.opp_violation = 1;
            if (!out.witness) {
                ConcavityWitness w;
                w.kind = "opponent-convexity";
                w.player = i;
                w.atom = a;
                w.base = xm;
                // flatten the two opponent profiles into the segment endpoints
                w.p.clear();
                w.q.clear();
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i) continue;
                    w.p.insert(w.p.end(), xp[j].begin(), xp[j].end());
                    w.q.insert(w.q.end(), xq[j].begin(), xq[j].end());
                }
                w.violation = rm - 0.5 * (rp + rq);
                out.witness = std::move(w);
            }
        }
    }
    return out;
}

} // namespace

ConcavityVerdict audit_concavity(const PublishersGame& game, std::uint64_t samples,
                                 std::uint64_t seed, int jobs) {
    validate_game(game);
    ConcavityVerdict verdict;
    verdict.samples = samples;

    verdict.activation_concave = true;
    for (std::size_t i = 0; i < kCurvatureGrid; ++i) {
        const double t = static_cast<double>(i) / (kCurvatureGrid - 1);
        if (!(game.activation.eval(t).gpp <= 1e-12)) {
            verdict.activation_concave = false;
            break;
        }
    }

    std::vector<SampleOutcome> outcomes(samples);
    parallel_for(samples, jobs, [&](std::size_t idx) {
        outcomes[idx] = run_sample(game, seed, idx);
    });
    for (const SampleOutcome& o : outcomes) {
        verdict.own_concavity_violations += o.own_violation;
        verdict.opponent_convexity_violations += o.opp_violation;
        if (o.witness && !verdict.witness) verdict.witness = o.witness;
    }
    return verdict;
}

std::size_t counterexample_player_count(const Activation& act, double a_hat) {
    const ActivationDerivs d = act.eval(a_hat);
    if (!(d.gpp > 0.0))
        throw InvalidInput("counterexample: activation has g''(a_hat) <= 0; no construction");
    const double threshold = 2.0 * d.gp * d.gp / (d.gpp * act.value(0.0)) + 1.0;
    const std::size_t n = static_cast<std::size_t>(std::floor(threshold)) + 1;
    return n < 2 ? 2 : n;
}

double counterexample_second_derivative(const Activation& act, std::size_t n, double a_hat) {
    const ActivationDerivs d = act.eval(a_hat);
    const double C = static_cast<double>(n - 1) * act.value(0.0);
    const double den = C + d.g;
    return C * (d.gpp * den - 2.0 * d.gp * d.gp) / (den * den * den);
}

PublishersGame build_counterexample(const Activation& act, double a_hat) {
    if (!(a_hat > 0.0 && a_hat < 1.0)) throw InvalidInput("counterexample: a_hat must be in (0,1)");
    const std::size_t n = counterexample_player_count(act, a_hat);
    DemandDistribution demand;
    demand.atoms = {Point{0.0}};
    demand.weights = {1.0};
    return make_game(n, 1, SemiMetric::absolute_1d, act, std::move(demand),
                     std::vector<Point>(n, Point{1.0}), std::vector<double>(n, 0.5));
}

void validate_symmetric_instance(const SymmetricInstance& inst) {
    if (inst.n < 2) throw InvalidInput("symmetric instance: need n >= 2");
    if (!(inst.c1 > 0.0 && inst.c1 <= 1.0))
        throw InvalidInput("symmetric instance: C1 must be in (0, 1]");
    if (!(inst.lambda > 0.0)) throw InvalidInput("symmetric instance: lambda must be positive");
    if (!inst.activation.concave())
        throw InvalidInput("symmetric instance: needs a concave activation family");
}

double psi_eval(const SymmetricInstance& inst, double alpha) {
    validate_symmetric_instance(inst);
    const double m = (1.0 - alpha) * (1.0 - alpha) * inst.c1;
    const ActivationDerivs d = inst.activation.eval(m);
    const double nn = static_cast<double>(inst.n);
    return ((nn - 1.0) / (nn * nn)) * (d.gp / d.g) * (1.0 - alpha) +
           inst.lambda * inst.c1 * alpha;
}

SymmetricEquilibrium symmetric_equilibrium(const SymmetricInstance& inst, double tol) {
    validate_symmetric_instance(inst);
    double lo = 0.0, hi = 1.0;
    // psi(0) < 0 (g decreasing) and psi(1) = lambda C1 > 0; psi is strictly
    // increasing, so plain bisection nails the root.
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (psi_eval(inst, mid) < 0.0 ? lo : hi) = mid;
    }
    SymmetricEquilibrium eq;
    eq.alpha_eq = 0.5 * (lo + hi);
    const double resid = 1.0 - eq.alpha_eq;
    eq.users_welfare = 1.0 - resid * resid * inst.c1;
    return eq;
}

WelfareMonotonicityReport symmetric_welfare_monotonicity(const SymmetricInstance& base,
                                                         const std::vector<double>& lambda_grid,
                                                         const std::vector<std::size_t>& n_grid,
                                                         const std::vector<std::size_t>& k_grid) {
    WelfareMonotonicityReport rep;
    rep.lambda_grid = lambda_grid;
    rep.n_grid = n_grid;
    rep.k_grid = k_grid;

    for (double lam : lambda_grid) {
        SymmetricInstance inst = base;
        inst.lambda = lam;
        rep.v_of_lambda.push_back(symmetric_equilibrium(inst).users_welfare);
    }
    for (std::size_t n : n_grid) {
        SymmetricInstance inst = base;
        inst.n = n;
        rep.v_of_n.push_back(symmetric_equilibrium(inst).users_welfare);
    }
    // the scalar equation has no k in it; evaluate anyway to document that
    for (std::size_t j = 0; j < k_grid.size(); ++j)
        rep.v_of_k.push_back(symmetric_equilibrium(base).users_welfare);

    const auto strictly_decreasing = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] < v[i - 1])) return false;
        return true;
    };
    rep.decreasing_in_lambda = strictly_decreasing(rep.v_of_lambda);
    rep.decreasing_in_n = strictly_decreasing(rep.v_of_n);
    rep.constant_in_k = true;
    for (double v : rep.v_of_k)
        if (v != rep.v_of_k.front()) rep.constant_in_k = false;
    return rep;
}

PublishersGame symmetric_game(const SymmetricInstance& inst, std::size_t k) {
    validate_symmetric_instance(inst);
    const double coord = std::sqrt(inst.c1);
    DemandDistribution demand;
    demand.atoms = {Point(k, 0.0)};
    demand.weights = {1.0};
    return make_game(inst.n, k, SemiMetric::scaled_squared_euclidean, inst.activation,
                     std::move(demand), std::vector<Point>(inst.n, Point(k, coord)),
                     std::vector<double>(inst.n, inst.lambda));
}

double alpha_of(const Point& x0, const Point& x_star, const Point& doc) {
    double num = 0.0, den = 0.0;
    for (std::size_t c = 0; c < x0.size(); ++c) {
        const double d = x_star[c] - x0[c];
        num += (doc[c] - x0[c]) * d;
        den += d * d;
    }
    if (den == 0.0) throw InvalidInput("alpha_of: x0 and x_star coincide");
    return num / den;
}

} // namespace prg
