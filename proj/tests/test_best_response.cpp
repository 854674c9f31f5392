#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "prg/analysis.hpp"
#include "prg/best_response.hpp"
#include "prg/errors.hpp"
#include "prg/model.hpp"
#include "test_util.hpp"

using namespace prg;

namespace {

// Exhaustive 1-d oracle: dense scan over [0,1].
double scan_best_value(const PublishersGame& game, Profile x, std::size_t i, int points) {
    double best = -1e300;
    for (int p = 0; p <= points; ++p) {
        x[i][0] = static_cast<double>(p) / points;
        best = std::max(best, utility(game, x, i));
    }
    return best;
}

} // namespace

TEST_CASE("ascend_box maximizes a concave quadratic") {
    // f(x) = -(x0-0.3)^2 - 2 (x1-0.9)^2, max at (0.3, 0.9)
    const auto value = [](const Point& p) {
        return -(p[0] - 0.3) * (p[0] - 0.3) - 2.0 * (p[1] - 0.9) * (p[1] - 0.9);
    };
    const auto grad = [](const Point& p) {
        return Point{-2.0 * (p[0] - 0.3), -4.0 * (p[1] - 0.9)};
    };
    const auto br = ascend_box(value, grad, Point{0.0, 0.0}, 5000, 1e-10);
    CHECK(br.x[0] == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(br.x[1] == doctest::Approx(0.9).epsilon(1e-8));
    CHECK(br.value == doctest::Approx(0.0).epsilon(1e-12));

    // maximizer outside the box: ascent must stop at the boundary
    const auto value2 = [](const Point& p) { return p[0]; };
    const auto grad2 = [](const Point&) { return Point{1.0}; };
    const auto edge = ascend_box(value2, grad2, Point{0.25}, 5000, 1e-10);
    CHECK(edge.x[0] == 1.0);
}

TEST_CASE("bisect_segment_max finds interior and boundary roots") {
    CHECK(bisect_segment_max([](double a) { return 0.42 - a; }) ==
          doctest::Approx(0.42).epsilon(1e-12));
    CHECK(bisect_segment_max([](double) { return -1.0; }) == 0.0);
    CHECK(bisect_segment_max([](double) { return 1.0; }) == 1.0);
}

TEST_CASE("best response matches a dense scan in one dimension") {
    Rng rng(59);
    const Activation acts[] = {
        Activation(ActivationFamily::linear, 1.0 + 1e-5),
        Activation(ActivationFamily::root, 0.5),
        Activation(ActivationFamily::log, 2.0 + 1e-5),
    };
    for (int rep = 0; rep < 12; ++rep) {
        const auto game =
            testutil::random_game(rng, 2 + rep % 3, 1, 1 + rep % 3, acts[rep % 3], 1.0);
        const Profile x = testutil::random_profile(rng, game.n, 1);
        const std::size_t i = rep % game.n;
        const auto br = best_response(game, x, i, 1e-8);
        const double oracle = scan_best_value(game, x, i, 100000);
        CHECK(br.value >= oracle - 1e-6);
        Profile probe = x;
        probe[i] = br.x;
        CHECK(utility(game, probe, i) == doctest::Approx(br.value).epsilon(1e-12));
    }
}

TEST_CASE("one-hot segment search agrees with full ascent") {
    Rng rng(61);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t k = 1 + rng() % 3;
        const auto game =
            testutil::random_game(rng, 3, k, 1, Activation(ActivationFamily::root, 0.5), 1.0);
        REQUIRE(game.demand.one_hot());
        const Profile x = testutil::random_profile(rng, 3, k);
        const auto br = best_response(game, x, 0, 1e-9);
        // compare against an unstructured multi-start ascent on the same utility
        Profile probe = x;
        const auto value = [&](const Point& p) {
            probe[0] = p;
            return utility(game, probe, 0);
        };
        const auto grad = [&](const Point& p) {
            probe[0] = p;
            return utility_gradient(game, probe, 0);
        };
        const auto free = ascend_box(value, grad, game.initial_docs[0], 20000, 1e-10);
        CHECK(br.value == doctest::Approx(free.value).epsilon(1e-7));
    }
}

TEST_CASE("global search covers the non-concave activation") {
    Rng rng(67);
    for (int rep = 0; rep < 6; ++rep) {
        const auto game = testutil::random_game(rng, 2, 1, 2,
                                                Activation(ActivationFamily::exponential, 10.0));
        const Profile x = testutil::random_profile(rng, 2, 1);
        const auto br = best_response_global(game, x, 0, 1e-8);
        const double oracle = scan_best_value(game, x, 0, 100000);
        CHECK(br.value >= oracle - 1e-6);
    }
}

TEST_CASE("epsilon gap is the worst per-player improvement") {
    Rng rng(71);
    const auto game =
        testutil::random_game(rng, 3, 2, 2, Activation(ActivationFamily::linear, 1.5), 1.0);
    const Profile x = testutil::random_profile(rng, 3, 2);
    const double gap = epsilon_gap(game, x, 1e-8);
    CHECK(gap >= 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        worst = std::max(worst, best_response(game, x, i, 1e-8).value - utility(game, x, i));
    CHECK(gap == doctest::Approx(worst).epsilon(1e-12));
}

TEST_CASE("unsupported configurations are refused loudly") {
    DemandDistribution demand;
    demand.atoms = {Point{0.0}};
    demand.weights = {1.0};
    const auto abs_game = make_game(2, 1, SemiMetric::absolute_1d,
                                    Activation(ActivationFamily::linear, 1.5), demand,
                                    {Point{1.0}, Point{1.0}}, {0.5, 0.5});
    const Profile x = {Point{0.5}, Point{0.25}};
    CHECK_THROWS_AS(best_response(abs_game, x, 0, 1e-6), UnsupportedOperation);
    CHECK_THROWS_AS(epsilon_gap(abs_game, x, 1e-6), UnsupportedOperation);

    const auto exp_game = make_game(2, 1, SemiMetric::scaled_squared_euclidean,
                                    Activation(ActivationFamily::exponential, 10.0), demand,
                                    {Point{1.0}, Point{1.0}}, {0.5, 0.5});
    // the concave-only routine refuses the non-concave family
    CHECK_THROWS_AS(best_response(exp_game, x, 0, 1e-6), UnsupportedOperation);
    CHECK_NOTHROW(best_response_global(exp_game, x, 0, 1e-6));

    // grid search beyond three dimensions is out of scope
    Rng rng(73);
    const auto wide = testutil::random_game(rng, 2, 4, 1,
                                            Activation(ActivationFamily::exponential, 5.0));
    const Profile xw = testutil::random_profile(rng, 2, 4);
    CHECK_THROWS_AS(best_response_global(wide, xw, 0, 1e-6), UnsupportedOperation);
    CHECK_THROWS_AS(epsilon_gap(wide, xw, 1e-6), UnsupportedOperation);
}

TEST_CASE("gap certifies a damped best-response fixed point on the line") {
    // two symmetric players, one need at the origin: damped best-response
    // iteration settles on a profile the certifier accepts as ~exact
    DemandDistribution demand;
    demand.atoms = {Point{0.0}};
    demand.weights = {1.0};
    const auto game = make_game(2, 1, SemiMetric::scaled_squared_euclidean,
                                Activation(ActivationFamily::linear, 2.0), std::move(demand),
                                {Point{0.5}, Point{0.5}}, {0.5, 0.5});
    Profile x = {Point{0.5}, Point{0.5}};
    for (int it = 0; it < 400; ++it) {
        const auto br = best_response(game, x, 0, 1e-12);
        x[0][0] = 0.5 * (x[0][0] + br.x[0]);
        x[1][0] = x[0][0]; // keep the profile symmetric
    }
    CHECK(epsilon_gap(game, x, 1e-10) <= 1e-6);
    // the fixed point is strictly between the need and the initial document
    CHECK(x[0][0] > 0.0);
    CHECK(x[0][0] < 0.5);
}
