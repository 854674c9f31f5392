#include "prg/sampler.hpp"

#include <array>
#include <cmath>

#include "prg/errors.hpp"
#include "prg/rng.hpp"

namespace prg {

SamplerKind sampler_kind_from_string(const std::string& name) {
    if (name == "uniform-iid") return SamplerKind::uniform_iid;
    if (name == "truncated-normal") return SamplerKind::truncated_normal;
    throw InvalidInput("unknown sampler kind: " + name);
}

std::string to_string(SamplerKind kind) {
    return kind == SamplerKind::uniform_iid ? "uniform-iid" : "truncated-normal";
}

void validate_ecosystem_spec(const EcosystemSpec& spec) {
    if (spec.n < 2) throw InvalidInput("sampler: need n >= 2");
    if (spec.k < 1 || spec.s < 1) throw InvalidInput("sampler: need k >= 1 and s >= 1");
    if (!(spec.lambda >= 0.0)) throw InvalidInput("sampler: lambda must be non-negative");
    if (spec.kind == SamplerKind::truncated_normal) {
        if (spec.n != 3 || spec.s != 3)
            throw InvalidInput("sampler: truncated-normal correlations are defined for n = s = 3");
        if (!(spec.sigma > 0.0)) throw InvalidInput("sampler: sigma must be positive");
        if (!(std::abs(spec.rho_docs) < 1.0) || !(std::abs(spec.rho_atoms) < 1.0))
            throw InvalidInput("sampler: correlations must lie in (-1, 1)");
    }
}

namespace {

// Cholesky factor of the AR(1) correlation matrix [[1,r,r^2],[r,1,r],[r^2,r,1]].
std::array<double, 9> ar1_cholesky(double r) {
    std::array<double, 9> m{1.0, r, r * r, r, 1.0, r, r * r, r, 1.0};
    std::array<double, 9> L{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = m[i * 3 + j];
            for (int p = 0; p < j; ++p) sum -= L[i * 3 + p] * L[j * 3 + p];
            if (i == j) {
                if (!(sum > 0.0)) throw InvalidInput("sampler: correlation matrix not PD");
                L[i * 3 + j] = std::sqrt(sum);
            } else {
                L[i * 3 + j] = sum / L[j * 3 + j];
            }
        }
    }
    return L;
}

// One coordinate-triple from the truncated correlated normal; rejection with
// a hard attempt budget.
std::array<double, 3> draw_triple(Rng& rng, const std::array<double, 9>& L, double mean,
                                  double sigma, std::uint64_t max_attempts) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        const double z0 = normal(rng), z1 = normal(rng), z2 = normal(rng);
        std::array<double, 3> v{};
        v[0] = mean + sigma * (L[0] * z0);
        v[1] = mean + sigma * (L[3] * z0 + L[4] * z1);
        v[2] = mean + sigma * (L[6] * z0 + L[7] * z1 + L[8] * z2);
        if (v[0] >= 0.0 && v[0] <= 1.0 && v[1] >= 0.0 && v[1] <= 1.0 && v[2] >= 0.0 &&
            v[2] <= 1.0)
            return v;
    }
    throw SamplingError("sampler: rejection budget exhausted (truncated normal)");
}

} // namespace

PublishersGame sample_instance(const EcosystemSpec& spec, const Activation& activation,
                               std::uint64_t seed) {
    validate_ecosystem_spec(spec);
    Rng rng(derive_seed(seed));

    std::vector<Point> docs(spec.n, Point(spec.k));
    std::vector<Point> atoms(spec.s, Point(spec.k));

    if (spec.kind == SamplerKind::uniform_iid) {
        for (Point& p : docs)
            for (double& v : p) v = uniform01(rng);
        for (Point& p : atoms)
            for (double& v : p) v = uniform01(rng);
    } else {
        const auto l_docs = ar1_cholesky(spec.rho_docs);
        const auto l_atoms = ar1_cholesky(spec.rho_atoms);
        for (std::size_t c = 0; c < spec.k; ++c) {
            const auto d = draw_triple(rng, l_docs, spec.mean, spec.sigma, spec.max_attempts);
            for (std::size_t i = 0; i < 3; ++i) docs[i][c] = d[i];
        }
        for (std::size_t c = 0; c < spec.k; ++c) {
            const auto a = draw_triple(rng, l_atoms, spec.mean, spec.sigma, spec.max_attempts);
            for (std::size_t i = 0; i < 3; ++i) atoms[i][c] = a[i];
        }
    }

    DemandDistribution demand;
    demand.atoms = std::move(atoms);
    demand.weights.assign(spec.s, 1.0 / static_cast<double>(spec.s));
    return make_game(spec.n, spec.k, SemiMetric::scaled_squared_euclidean, activation,
                     std::move(demand), std::move(docs),
                     std::vector<double>(spec.n, spec.lambda));
}

} // namespace prg
