#include "prg/activation.hpp"

#include <cmath>

#include "prg/errors.hpp"

namespace prg {

ActivationFamily activation_family_from_string(const std::string& name) {
    if (name == "linear") return ActivationFamily::linear;
    if (name == "root") return ActivationFamily::root;
    if (name == "log") return ActivationFamily::log;
    if (name == "exponential" || name == "softmax") return ActivationFamily::exponential;
    throw InvalidInput("unknown activation family: " + name);
}

std::string to_string(ActivationFamily family) {
    switch (family) {
        case ActivationFamily::linear: return "linear";
        case ActivationFamily::root: return "root";
        case ActivationFamily::log: return "log";
        case ActivationFamily::exponential: return "exponential";
    }
    return "?";
}

double Activation::default_param(ActivationFamily family) {
    constexpr double shift = 1e-5;
    switch (family) {
        case ActivationFamily::linear: return 1.0 + shift;
        case ActivationFamily::root: return 0.5;
        case ActivationFamily::log: return 2.0 + shift;
        case ActivationFamily::exponential: return 1.0;
    }
    return 0.0;
}

Activation::Activation(ActivationFamily family, double param) : family_(family), param_(param) {
    if (!std::isfinite(param)) throw InvalidInput("activation parameter must be finite");
    switch (family_) {
        case ActivationFamily::linear:
            if (param <= 1.0) throw InvalidInput("linear activation needs b > 1 for g(1) > 0");
            break;
        case ActivationFamily::root:
            if (param <= 0.0 || param >= 1.0)
                throw InvalidInput("root activation needs exponent in (0, 1)");
            break;
        case ActivationFamily::log:
            if (param <= 2.0) throw InvalidInput("log activation needs c > 2 for g(1) > 0");
            break;
        case ActivationFamily::exponential:
            if (param <= 0.0) throw InvalidInput("exponential activation needs beta > 0");
            break;
    }
    // Belt-and-braces: strict decrease across the interval.  The parameter
    // checks above already imply it; this guards future family additions.
    double prev = value(0.0);
    for (int i = 1; i <= 64; ++i) {
        const double t = static_cast<double>(i) / 64.0;
        const double cur = value(t);
        if (!(cur < prev)) throw InvalidInput("activation must be strictly decreasing on [0,1]");
        prev = cur;
    }
}

double Activation::value(double t) const {
    switch (family_) {
        case ActivationFamily::linear: return param_ - t;
        case ActivationFamily::root: return std::pow(1.0 - t, param_);
        case ActivationFamily::log: return std::log(param_ - t);
        case ActivationFamily::exponential: return std::exp(-param_ * t);
    }
    return 0.0;
}

ActivationDerivs Activation::eval(double t) const {
    ActivationDerivs d{};
    switch (family_) {
        case ActivationFamily::linear:
            d.g = param_ - t;
            d.gp = -1.0;
            d.gpp = 0.0;
            break;
        case ActivationFamily::root: {
            const double a = param_;
            const double u = 1.0 - t;
            d.g = std::pow(u, a);
            d.gp = -a * std::pow(u, a - 1.0);
            d.gpp = a * (a - 1.0) * std::pow(u, a - 2.0);
            break;
        }
        case ActivationFamily::log: {
            const double u = param_ - t;
            d.g = std::log(u);
            d.gp = -1.0 / u;
            d.gpp = -1.0 / (u * u);
            break;
        }
        case ActivationFamily::exponential: {
            const double b = param_;
            d.g = std::exp(-b * t);
            d.gp = -b * d.g;
            d.gpp = b * b * d.g;
            break;
        }
    }
    return d;
}

} // namespace prg
