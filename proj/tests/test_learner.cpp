#include <doctest.h>

#include <cmath>

#include "prg/errors.hpp"
#include "prg/learner.hpp"
#include "prg/rng.hpp"

using namespace prg;

TEST_CASE("step schedules") {
    LearnerSpec spec;
    spec.eta0 = 0.5;
    spec.schedule = StepSchedule::inverse_sqrt;
    CHECK(step_size(spec, 0) == 0.5);
    CHECK(step_size(spec, 3) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(step_size(spec, 99) == doctest::Approx(0.05).epsilon(1e-15));
    spec.schedule = StepSchedule::constant;
    CHECK(step_size(spec, 0) == 0.5);
    CHECK(step_size(spec, 99) == 0.5);
}

TEST_CASE("plain ascent clamps to the cube") {
    LearnerSpec spec; // pga, eta0 = 0.5, inverse-sqrt
    auto st = learner_init(spec, Point{0.5, 0.5});
    learner_step(spec, st, Point{2.0, -2.0});
    CHECK(st.action[0] == 1.0); // 0.5 + 0.5*2 clipped
    CHECK(st.action[1] == 0.0);
    CHECK(st.round == 1);

    learner_step(spec, st, Point{-0.4, 0.4});
    // eta_1 = 0.5/sqrt(2)
    const double eta1 = 0.5 / std::sqrt(2.0);
    CHECK(st.action[0] == doctest::Approx(1.0 - 0.4 * eta1).epsilon(1e-15));
    CHECK(st.action[1] == doctest::Approx(0.4 * eta1).epsilon(1e-15));
}

TEST_CASE("optimistic update uses 2g - g_prev") {
    LearnerSpec spec;
    spec.kind = LearnerKind::optimistic_gradient_ascent;
    spec.eta0 = 0.1;
    spec.schedule = StepSchedule::constant;
    auto st = learner_init(spec, Point{0.5});
    learner_step(spec, st, Point{0.3}); // prev = 0 at start: move = 2*0.3 - 0
    CHECK(st.action[0] == doctest::Approx(0.5 + 0.1 * 0.6).epsilon(1e-15));
    learner_step(spec, st, Point{0.1}); // move = 2*0.1 - 0.3
    CHECK(st.action[0] == doctest::Approx(0.56 + 0.1 * (-0.1)).epsilon(1e-14));
    CHECK(st.prev_gradient[0] == 0.1);
}

TEST_CASE("gradient history accumulates") {
    LearnerSpec spec;
    auto st = learner_init(spec, Point{0.25, 0.75});
    learner_step(spec, st, Point{0.1, 0.2});
    learner_step(spec, st, Point{0.3, -0.1});
    CHECK(st.grad_sum[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(st.grad_sum[1] == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("two identical learners stay bit-identical") {
    LearnerSpec spec;
    spec.kind = LearnerKind::optimistic_gradient_ascent;
    auto a = learner_init(spec, Point{0.4, 0.6});
    auto b = learner_init(spec, Point{0.4, 0.6});
    Rng rng(53);
    for (int t = 0; t < 100; ++t) {
        Point g{uniform01(rng) - 0.5, uniform01(rng) - 0.5};
        learner_step(spec, a, g);
        learner_step(spec, b, g);
    }
    CHECK(a.action == b.action);
    CHECK(a.grad_sum == b.grad_sum);
}

TEST_CASE("spec and start validation") {
    LearnerSpec bad;
    bad.eta0 = 0.0;
    CHECK_THROWS_AS(validate_learner_spec(bad), InvalidInput);
    bad.eta0 = -1.0;
    CHECK_THROWS_AS(validate_learner_spec(bad), InvalidInput);
    LearnerSpec ok;
    CHECK_NOTHROW(validate_learner_spec(ok));
    CHECK_THROWS_AS(learner_init(ok, Point{1.5}), InvalidInput);
    CHECK_THROWS_AS(learner_init(ok, Point{-0.1, 0.5}), InvalidInput);
}

TEST_CASE("names round trip") {
    CHECK(learner_kind_from_string("pga") == LearnerKind::projected_gradient_ascent);
    CHECK(learner_kind_from_string("projected-gradient-ascent") ==
          LearnerKind::projected_gradient_ascent);
    CHECK(learner_kind_from_string("optimistic") == LearnerKind::optimistic_gradient_ascent);
    CHECK(to_string(LearnerKind::optimistic_gradient_ascent) == "optimistic-gradient-ascent");
    CHECK(step_schedule_from_string(to_string(StepSchedule::inverse_sqrt)) ==
          StepSchedule::inverse_sqrt);
    CHECK_THROWS_AS(learner_kind_from_string("follow-the-leader"), InvalidInput);
    CHECK_THROWS_AS(step_schedule_from_string("linear"), InvalidInput);
}
