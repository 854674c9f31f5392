#include <doctest.h>

#include <cmath>

#include "prg/activation.hpp"
#include "prg/errors.hpp"

using namespace prg;

namespace {

// independent probe of the closed-form derivatives
void check_derivs_against_fd(const Activation& act, double t, double h = 1e-6) {
    const ActivationDerivs d = act.eval(t);
    const double fd1 = (act.value(t + h) - act.value(t - h)) / (2.0 * h);
    const double fd2 = (act.value(t + h) - 2.0 * act.value(t) + act.value(t - h)) / (h * h);
    CHECK(d.gp == doctest::Approx(fd1).epsilon(1e-6));
    CHECK(d.gpp == doctest::Approx(fd2).epsilon(5e-4));
}

} // namespace

TEST_CASE("activation closed forms at pinned points") {
    const Activation lin(ActivationFamily::linear, 1.0 + 1e-5);
    CHECK(lin.eval(0.25).g == doctest::Approx(0.75001).epsilon(1e-12));
    CHECK(lin.eval(0.25).gp == -1.0);
    CHECK(lin.eval(0.25).gpp == 0.0);
    CHECK(lin.eval(1.0).g == doctest::Approx(1e-5).epsilon(1e-9));

    const Activation root(ActivationFamily::root, 0.5);
    CHECK(root.eval(0.0).g == 1.0);
    CHECK(root.eval(0.0).gp == -0.5);
    CHECK(root.eval(0.0).gpp == -0.25);
    CHECK(root.value(1.0) == 0.0); // touches zero only at the far end

    const Activation lg(ActivationFamily::log, 2.0 + 1e-5);
    CHECK(lg.eval(0.0).g == doctest::Approx(std::log(2.0 + 1e-5)).epsilon(1e-15));
    CHECK(lg.eval(1.0).g == doctest::Approx(std::log(1.0 + 1e-5)).epsilon(1e-9));

    const Activation ex(ActivationFamily::exponential, 10.0);
    CHECK(ex.eval(0.5).g == doctest::Approx(std::exp(-5.0)).epsilon(1e-15));
    CHECK(ex.eval(0.5).gp == doctest::Approx(-10.0 * std::exp(-5.0)).epsilon(1e-15));
    CHECK(ex.eval(0.5).gpp == doctest::Approx(100.0 * std::exp(-5.0)).epsilon(1e-15));
}

TEST_CASE("activation derivatives agree with finite differences") {
    const Activation acts[] = {
        Activation(ActivationFamily::linear, 1.7),
        Activation(ActivationFamily::root, 0.3),
        Activation(ActivationFamily::root, 0.9),
        Activation(ActivationFamily::log, 2.4),
        Activation(ActivationFamily::exponential, 3.0),
    };
    for (const Activation& act : acts)
        for (double t : {0.05, 0.3, 0.5, 0.77, 0.95}) check_derivs_against_fd(act, t);
}

TEST_CASE("activation positivity and monotonicity on the interval") {
    const Activation acts[] = {
        Activation(ActivationFamily::linear, 1.0 + 1e-5),
        Activation(ActivationFamily::root, 0.5),
        Activation(ActivationFamily::log, 2.0 + 1e-5),
        Activation(ActivationFamily::exponential, 10.0),
    };
    for (const Activation& act : acts) {
        double prev = act.value(0.0);
        for (int i = 1; i <= 1000; ++i) {
            const double t = i / 1000.0;
            const double cur = act.value(t);
            CHECK(cur < prev);
            CHECK(cur >= 0.0);
            if (t < 1.0) CHECK(cur > 0.0);
            prev = cur;
        }
    }
}

TEST_CASE("activation construction rejects bad hyperparameters") {
    CHECK_THROWS_AS(Activation(ActivationFamily::linear, 1.0), InvalidInput);
    CHECK_THROWS_AS(Activation(ActivationFamily::linear, 0.5), InvalidInput);
    CHECK_THROWS_AS(Activation(ActivationFamily::root, 0.0), InvalidInput);
    CHECK_THROWS_AS(Activation(ActivationFamily::root, 1.0), InvalidInput);
    CHECK_THROWS_AS(Activation(ActivationFamily::log, 2.0), InvalidInput);
    CHECK_THROWS_AS(Activation(ActivationFamily::exponential, 0.0), InvalidInput);
    CHECK_THROWS_AS(Activation(ActivationFamily::exponential, -1.0), InvalidInput);
}

TEST_CASE("only the exponential family reports non-concave") {
    CHECK(Activation(ActivationFamily::linear, 2.0).concave());
    CHECK(Activation(ActivationFamily::root, 0.5).concave());
    CHECK(Activation(ActivationFamily::log, 3.0).concave());
    CHECK_FALSE(Activation(ActivationFamily::exponential, 1.0).concave());
}
