#include "prg/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "prg/errors.hpp"
#include "prg/rng.hpp"

namespace prg {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace

BootstrapCI bootstrap_ci(const std::vector<double>& values, std::size_t B, double confidence,
                         std::uint64_t seed) {
    if (values.empty()) throw InvalidInput("bootstrap: need at least one value");
    if (B < 2) throw InvalidInput("bootstrap: need at least two resamples");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw InvalidInput("bootstrap: confidence must be in (0, 1)");

    const std::size_t n = values.size();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);

    Rng rng(derive_seed(seed));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<double> means(B);
    for (std::size_t b = 0; b < B; ++b) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += values[pick(rng)];
        means[b] = acc / static_cast<double>(n);
    }
    std::sort(means.begin(), means.end());

    const double tail = 0.5 * (1.0 - confidence);
    BootstrapCI ci;
    ci.mean = mean;
    ci.lo = quantile_sorted(means, tail);
    ci.hi = quantile_sorted(means, 1.0 - tail);
    return ci;
}

} // namespace prg
