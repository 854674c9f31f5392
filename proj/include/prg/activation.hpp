#pragma once

#include <string>

namespace prg {

enum class ActivationFamily { linear, root, log, exponential };

ActivationFamily activation_family_from_string(const std::string& name);
std::string to_string(ActivationFamily family);

struct ActivationDerivs {
    double g;   // g(t)
    double gp;  // g'(t)
    double gpp; // g''(t)
};

// Positive, strictly decreasing, twice differentiable weight g on [0, 1].
//
//   linear       g(t) = b - t          b > 1
//   root         g(t) = (1 - t)^a      0 < a < 1
//   log          g(t) = ln(c - t)      c > 2
//   exponential  g(t) = exp(-beta t)   beta > 0   (softmax weight, not concave)
//
// Parameter ranges are exactly the conditions for g > 0 and g' < 0 on the
// unit interval, except that the root family touches zero at t = 1 for every
// admissible exponent; its one-sided derivatives blow up there and callers
// evaluating at exact distance 1 get the (0, -inf, -inf) limit.
class Activation {
  public:
    Activation(ActivationFamily family, double param);

    ActivationFamily family() const { return family_; }
    double param() const { return param_; }

    // True for the families inducing concave utilities (linear/root/log).
    bool concave() const { return family_ != ActivationFamily::exponential; }

    double value(double t) const;
    ActivationDerivs eval(double t) const;

    static double default_param(ActivationFamily family);

  private:
    ActivationFamily family_;
    double param_;
};

} // namespace prg
