#pragma once

#include <stdexcept>
#include <string>

namespace prg {

// Raised when a game, activation, learner spec, etc. fails validation.
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an operation is asked to do something it deliberately refuses
// (e.g. gradients under a non-differentiable metric, global search for k > 3).
struct UnsupportedOperation : std::logic_error {
    explicit UnsupportedOperation(const std::string& what) : std::logic_error(what) {}
};

// Raised when a running simulation hits a non-recoverable numerical state.
struct AbortedRun : std::runtime_error {
    explicit AbortedRun(const std::string& what) : std::runtime_error(what) {}
};

// Raised when rejection sampling exhausts its attempt budget.
struct SamplingError : std::runtime_error {
    explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace prg
