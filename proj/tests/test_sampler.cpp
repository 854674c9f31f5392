#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "prg/errors.hpp"
#include "prg/rng.hpp"
#include "prg/sampler.hpp"

using namespace prg;

TEST_CASE("sampling is deterministic in (spec, seed)") {
    EcosystemSpec spec;
    const Activation act(ActivationFamily::root, 0.5);
    const auto a = sample_instance(spec, act, 99);
    const auto b = sample_instance(spec, act, 99);
    CHECK(a.initial_docs == b.initial_docs);
    CHECK(a.demand.atoms == b.demand.atoms);
    const auto c = sample_instance(spec, act, 100);
    CHECK(a.initial_docs != c.initial_docs);
}

TEST_CASE("one seed yields one draw regardless of the activation") {
    EcosystemSpec spec;
    const auto lin = sample_instance(spec, Activation(ActivationFamily::linear, 1.5), 7);
    const auto exp = sample_instance(spec, Activation(ActivationFamily::exponential, 10.0), 7);
    CHECK(lin.initial_docs == exp.initial_docs);
    CHECK(lin.demand.atoms == exp.demand.atoms);
    CHECK(lin.activation.family() == ActivationFamily::linear);
    CHECK(exp.activation.family() == ActivationFamily::exponential);
}

TEST_CASE("sampled games are valid and inside the cube") {
    EcosystemSpec uniform;
    uniform.n = 4;
    uniform.k = 2;
    uniform.s = 5;
    EcosystemSpec trunc;
    trunc.kind = SamplerKind::truncated_normal;
    trunc.rho_docs = 0.6;
    trunc.rho_atoms = -0.4;
    const Activation act(ActivationFamily::linear, 1.2);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (const auto& spec : {uniform, trunc}) {
            const auto game = sample_instance(spec, act, seed);
            CHECK(game.n == spec.n);
            CHECK(game.k == spec.k);
            CHECK(game.demand.size() == spec.s);
            for (const auto& p : game.initial_docs) CHECK(in_unit_cube(p));
            for (const auto& p : game.demand.atoms) CHECK(in_unit_cube(p));
            for (double l : game.lambdas) CHECK(l == spec.lambda);
            for (double w : game.demand.weights)
                CHECK(w == doctest::Approx(1.0 / spec.s).epsilon(1e-15));
        }
    }
}

namespace {

// Free-standing truncated-normal triple sampler used only as an oracle:
// Box-Muller + explicit Cholesky of the AR(1) matrix + rejection, written
// independently of the library path.
std::vector<std::array<double, 3>> oracle_triples(double mean, double sigma, double rho,
                                                  std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto gauss = [&]() {
        double u1 = 0.0;
        do { u1 = unif(rng); } while (u1 == 0.0);
        const double u2 = unif(rng);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    };
    // Cholesky of [[1,r,r^2],[r,1,r],[r^2,r,1]]
    const double l21 = rho, l22 = std::sqrt(1.0 - rho * rho);
    const double l31 = rho * rho, l32 = rho * (1.0 - rho * rho) / l22;
    const double l33 = std::sqrt(1.0 - l31 * l31 - l32 * l32);
    std::vector<std::array<double, 3>> out;
    while (out.size() < count) {
        const double z1 = gauss(), z2 = gauss(), z3 = gauss();
        const std::array<double, 3> x = {mean + sigma * z1,
                                         mean + sigma * (l21 * z1 + l22 * z2),
                                         mean + sigma * (l31 * z1 + l32 * z2 + l33 * z3)};
        if (x[0] < 0 || x[0] > 1 || x[1] < 0 || x[1] > 1 || x[2] < 0 || x[2] > 1) continue;
        out.push_back(x);
    }
    return out;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cab = 0.0, caa = 0.0, cbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cab += (a[i] - ma) * (b[i] - mb);
        caa += (a[i] - ma) * (a[i] - ma);
        cbb += (b[i] - mb) * (b[i] - mb);
    }
    return cab / std::sqrt(caa * cbb);
}

} // namespace

TEST_CASE("truncated-normal draws match an independent oracle's correlation") {
    EcosystemSpec spec;
    spec.kind = SamplerKind::truncated_normal;
    spec.k = 1; // one coordinate -> each instance contributes one doc triple
    spec.rho_docs = 0.6;
    const Activation act(ActivationFamily::linear, 1.5);

    const std::size_t draws = 4000;
    std::vector<double> lib1, lib2, lib3;
    for (std::uint64_t seed = 0; seed < draws; ++seed) {
        const auto game = sample_instance(spec, act, seed);
        lib1.push_back(game.initial_docs[0][0]);
        lib2.push_back(game.initial_docs[1][0]);
        lib3.push_back(game.initial_docs[2][0]);
    }
    const auto oracle = oracle_triples(0.5, 0.2, 0.6, draws, 424242);
    std::vector<double> o1, o2, o3;
    for (const auto& t : oracle) {
        o1.push_back(t[0]);
        o2.push_back(t[1]);
        o3.push_back(t[2]);
    }

    // adjacent pairs share the AR(1) rho; the 1-3 pair decays to rho^2
    CHECK(pearson(lib1, lib2) == doctest::Approx(pearson(o1, o2)).epsilon(0.05));
    CHECK(pearson(lib2, lib3) == doctest::Approx(pearson(o2, o3)).epsilon(0.05));
    CHECK(pearson(lib1, lib3) == doctest::Approx(pearson(o1, o3)).epsilon(0.08));
    // and the oracle itself sits near the nominal values (truncation shrinks a little)
    CHECK(std::abs(pearson(o1, o2) - 0.6) < 0.06);

    const auto mean_of = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        return m / v.size();
    };
    CHECK(mean_of(lib1) == doctest::Approx(mean_of(o1)).epsilon(0.02));
    CHECK(mean_of(lib2) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("a hopeless rejection region raises SamplingError") {
    EcosystemSpec spec;
    spec.kind = SamplerKind::truncated_normal;
    spec.mean = -50.0; // the truncation region has vanishing mass
    spec.max_attempts = 200;
    CHECK_THROWS_AS(
        sample_instance(spec, Activation(ActivationFamily::linear, 1.5), 1), SamplingError);
}

TEST_CASE("spec validation rejects unusable configurations") {
    EcosystemSpec bad;
    bad.kind = SamplerKind::truncated_normal;
    bad.n = 4; // the correlated sampler is pinned to triples
    CHECK_THROWS_AS(validate_ecosystem_spec(bad), InvalidInput);
    bad = EcosystemSpec{};
    bad.kind = SamplerKind::truncated_normal;
    bad.rho_docs = 1.0;
    CHECK_THROWS_AS(validate_ecosystem_spec(bad), InvalidInput);
    bad = EcosystemSpec{};
    bad.sigma = 0.0;
    bad.kind = SamplerKind::truncated_normal;
    CHECK_THROWS_AS(validate_ecosystem_spec(bad), InvalidInput);
    bad = EcosystemSpec{};
    bad.n = 1;
    CHECK_THROWS_AS(validate_ecosystem_spec(bad), InvalidInput);
    bad = EcosystemSpec{};
    bad.lambda = -0.5;
    CHECK_THROWS_AS(validate_ecosystem_spec(bad), InvalidInput);
    CHECK_NOTHROW(validate_ecosystem_spec(EcosystemSpec{}));

    CHECK(sampler_kind_from_string("uniform-iid") == SamplerKind::uniform_iid);
    CHECK(sampler_kind_from_string(to_string(SamplerKind::truncated_normal)) ==
          SamplerKind::truncated_normal);
    CHECK_THROWS_AS(sampler_kind_from_string("gaussian"), InvalidInput);
}
