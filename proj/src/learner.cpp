#include "prg/learner.hpp"

#include <cmath>
#include <utility>

#include "prg/errors.hpp"

namespace prg {

LearnerKind learner_kind_from_string(const std::string& name) {
    if (name == "projected-gradient-ascent" || name == "pga")
        return LearnerKind::projected_gradient_ascent;
    if (name == "optimistic-gradient-ascent" || name == "optimistic")
        return LearnerKind::optimistic_gradient_ascent;
    throw InvalidInput("unknown learner kind: " + name);
}

std::string to_string(LearnerKind kind) {
    return kind == LearnerKind::projected_gradient_ascent ? "projected-gradient-ascent"
                                                          : "optimistic-gradient-ascent";
}

StepSchedule step_schedule_from_string(const std::string& name) {
    if (name == "constant") return StepSchedule::constant;
    if (name == "inverse-sqrt") return StepSchedule::inverse_sqrt;
    throw InvalidInput("unknown step schedule: " + name);
}

std::string to_string(StepSchedule schedule) {
    return schedule == StepSchedule::constant ? "constant" : "inverse-sqrt";
}

void validate_learner_spec(const LearnerSpec& spec) {
    if (!(spec.eta0 > 0.0) || !std::isfinite(spec.eta0))
        throw InvalidInput("learner: eta0 must be positive and finite");
}

double step_size(const LearnerSpec& spec, std::uint64_t t) {
    if (spec.schedule == StepSchedule::constant) return spec.eta0;
    return spec.eta0 / std::sqrt(static_cast<double>(t + 1));
}

LearnerState learner_init(const LearnerSpec& spec, Point start) {
    validate_learner_spec(spec);
    if (!in_unit_cube(start)) throw InvalidInput("learner: start outside the unit cube");
    LearnerState st;
    st.action = std::move(start);
    st.grad_sum.assign(st.action.size(), 0.0);
    st.prev_gradient.assign(st.action.size(), 0.0);
    return st;
}

void learner_step(const LearnerSpec& spec, LearnerState& state, const Point& gradient) {
    if (gradient.size() != state.action.size())
        throw InvalidInput("learner: gradient has wrong dimension");
    const double eta = step_size(spec, state.round);
    const bool optimistic = spec.kind == LearnerKind::optimistic_gradient_ascent;
    for (std::size_t c = 0; c < state.action.size(); ++c) {
        double move = gradient[c];
        if (optimistic) move += gradient[c] - state.prev_gradient[c];
        state.action[c] += eta * move;
        state.grad_sum[c] += gradient[c];
        state.prev_gradient[c] = gradient[c];
    }
    clamp_to_cube(state.action);
    ++state.round;
}

} // namespace prg
