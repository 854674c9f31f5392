#pragma once

#include <cstdint>
#include <vector>

namespace prg {

struct BootstrapCI {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Percentile bootstrap CI for the mean: B resamples with replacement, seeded,
// interval from the empirical quantiles of the resampled means.
BootstrapCI bootstrap_ci(const std::vector<double>& values, std::size_t B, double confidence,
                         std::uint64_t seed);

} // namespace prg
