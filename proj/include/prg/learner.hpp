#pragma once

#include <cstdint>
#include <string>

#include "prg/game.hpp"

namespace prg {

enum class LearnerKind { projected_gradient_ascent, optimistic_gradient_ascent };
enum class StepSchedule { constant, inverse_sqrt };

LearnerKind learner_kind_from_string(const std::string& name);
std::string to_string(LearnerKind kind);
StepSchedule step_schedule_from_string(const std::string& name);
std::string to_string(StepSchedule schedule);

struct LearnerSpec {
    LearnerKind kind = LearnerKind::projected_gradient_ascent;
    double eta0 = 0.5;
    StepSchedule schedule = StepSchedule::inverse_sqrt;
};

void validate_learner_spec(const LearnerSpec& spec);

// eta_t for the t-th update (t counts from 0).
double step_size(const LearnerSpec& spec, std::uint64_t t);

struct LearnerState {
    std::uint64_t round = 0; // number of updates applied so far
    Point action;
    Point grad_sum;      // running sum of observed gradients
    Point prev_gradient; // last observed gradient (optimistic prediction)
};

LearnerState learner_init(const LearnerSpec& spec, Point start);

// One online update from the observed gradient of the player's own utility:
//   pga:        x <- clamp(x + eta_t * grad)
//   optimistic: x <- clamp(x + eta_t * (2 grad - prev_grad))
void learner_step(const LearnerSpec& spec, LearnerState& state, const Point& gradient);

} // namespace prg
