#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "prg/game.hpp"

namespace prg {

struct BestResponse {
    Point x;
    double value = 0.0;
};

// --- generic box-constrained ascent -----------------------------------------
//
// Monotone projected gradient ascent with an adaptive (Armijo backtracking /
// regrowth) step.  Stops when the projected gradient norm drops to tol_grad
// or after max_iters updates.  For concave objectives the returned point is a
// global maximizer up to the stopping rule; for non-concave objectives it is
// a local one and callers treat the value as a lower bound.

template <class ValueFn, class GradFn>
BestResponse ascend_box(ValueFn&& value, GradFn&& grad, Point x, int max_iters, double tol_grad) {
    double fx = value(x);
    double eta = 0.25;
    const std::size_t k = x.size();
    Point y(k);
    for (int it = 0; it < max_iters; ++it) {
        const Point g = grad(x);
        double gm2 = 0.0; // projected gradient: blocked components dropped
        for (std::size_t c = 0; c < k; ++c) {
            const bool blocked = (x[c] <= 0.0 && g[c] < 0.0) || (x[c] >= 1.0 && g[c] > 0.0);
            if (!blocked) gm2 += g[c] * g[c];
        }
        if (std::sqrt(gm2) <= tol_grad) break;
        bool accepted = false;
        for (int trial = 0; trial < 60; ++trial) {
            double dir = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
                y[c] = x[c] + eta * g[c];
                if (y[c] < 0.0) y[c] = 0.0;
                if (y[c] > 1.0) y[c] = 1.0;
                dir += g[c] * (y[c] - x[c]);
            }
            if (dir <= 0.0) break; // fully blocked; projected gradient was ~0
            const double fy = value(y);
            if (fy >= fx + 1e-4 * dir) {
                x = y;
                fx = fy;
                eta = std::min(eta * 2.0, 4.0);
                accepted = true;
                break;
            }
            eta *= 0.5;
            if (eta < 1e-16) break;
        }
        if (!accepted) break;
    }
    return {std::move(x), fx};
}

// Maximize a concave function along a segment via bisection on the sign of
// its directional derivative.  dderiv(alpha) must be non-increasing.
template <class DirDeriv>
double bisect_segment_max(DirDeriv&& dderiv, int iters = 100) {
    double lo = 0.0, hi = 1.0;
    if (dderiv(0.0) <= 0.0) return 0.0;
    if (dderiv(1.0) >= 0.0) return 1.0;
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        (dderiv(mid) >= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// --- best responses in a publishers' game -----------------------------------

// Maximizer of u_i(., x_-i) for concave activations under the
// scaled-squared-euclidean metric.  One-hot demand reduces to a segment
// search between the initial document and the information need; general
// demand uses multi-start projected ascent (the incumbent action, the initial
// document, every demand atom and 8 fixed-seed random starts, capped at 5000
// iterations per start, stopping at projected-gradient norm <= tolerance).
// Concavity makes any converged start globally optimal, so remaining starts
// are skipped once one converges.
BestResponse best_response(const PublishersGame& game, const Profile& x, std::size_t i,
                           double tolerance);

// Global-search variant for non-concave activations: 32^k coarse grid
// (k <= 3; throws UnsupportedOperation above that) plus the multi-start list,
// each refined by projected ascent.  The value is a certified lower bound on
// the true maximum.
BestResponse best_response_global(const PublishersGame& game, const Profile& x, std::size_t i,
                                  double tolerance, int jobs = 1);

// max_i [ u_i(BR_i, x_-i) - u_i(x) ], clipped at zero; x is an
// (gap + tolerance)-Nash equilibrium.  Dispatches per activation concavity.
// jobs parallelizes the per-player best responses.
double epsilon_gap(const PublishersGame& game, const Profile& x, double tolerance, int jobs = 1);

} // namespace prg
