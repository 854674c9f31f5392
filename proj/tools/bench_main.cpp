// Timings for the OpenMP-parallel kernels against their serial (jobs=1)
// reference paths.  Both sides produce bit-identical results by construction
// (per-index substreams + ordered reductions); this just reports the speedup.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "prg/analysis.hpp"
#include "prg/best_response.hpp"
#include "prg/sampler.hpp"
#include "prg/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace prg;

namespace {

template <typename Fn>
double time_once(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial, double parallel, int jobs) {
    std::printf("%-24s serial %8.3fs   jobs=%-2d %8.3fs   speedup %.2fx\n", name, serial, jobs,
                parallel, parallel > 0.0 ? serial / parallel : 0.0);
}

} // namespace

int main(int argc, char** argv) {
    int jobs =
#ifdef _OPENMP
        omp_get_max_threads();
#else
        1;
#endif
    std::uint64_t seed = 1;
    std::uint64_t samples = 200000;
    std::uint64_t instances = 64;

    CLI::App app{"serial vs parallel kernel timings"};
    app.add_option("--jobs", jobs, "parallel worker count")->capture_default_str();
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();
    app.add_option("--samples", samples, "concavity audit samples")->capture_default_str();
    app.add_option("--instances", instances, "sweep instances per point")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    EcosystemSpec eco; // defaults n=3 s=3 k=3 lambda=0.5
    const PublishersGame game = sample_instance(eco, Activation(ActivationFamily::root, 0.5), seed);

    {
        ConcavityVerdict a, b;
        const double ts = time_once([&] { a = audit_concavity(game, samples, seed, 1); });
        const double tp = time_once([&] { b = audit_concavity(game, samples, seed, jobs); });
        report("audit_concavity", ts, tp, jobs);
        if (a.own_concavity_violations != b.own_concavity_violations ||
            a.opponent_convexity_violations != b.opponent_convexity_violations) {
            std::fprintf(stderr, "verdict mismatch between serial and parallel runs\n");
            return 1;
        }
    }

    {
        const PublishersGame sharp =
            sample_instance(eco, Activation(ActivationFamily::exponential, 10.0), seed);
        double gs = 0.0, gp = 0.0;
        const double ts = time_once([&] { gs = epsilon_gap(sharp, sharp.initial_docs, 1e-4, 1); });
        const double tp =
            time_once([&] { gp = epsilon_gap(sharp, sharp.initial_docs, 1e-4, jobs); });
        report("epsilon_gap (global)", ts, tp, jobs);
        if (gs != gp) {
            std::fprintf(stderr, "gap mismatch between serial and parallel runs\n");
            return 1;
        }
    }

    {
        SweepSpec spec;
        spec.parameter = SweptParameter::lambda;
        spec.grid = {0.25, 1.0};
        spec.activations = {Activation(ActivationFamily::linear, 1.0 + 1e-5),
                            Activation(ActivationFamily::root, 0.5)};
        spec.base = eco;
        spec.instances_per_point = instances;
        spec.seed = seed;
        spec.dynamics.record_ledger = false;
        SweepResult rs, rp;
        const double ts = time_once([&] { rs = run_sweep(spec, 1); });
        const double tp = time_once([&] { rp = run_sweep(spec, jobs); });
        report("run_sweep", ts, tp, jobs);
        for (std::size_t c = 0; c < rs.cells.size(); ++c)
            if (rs.cells[c].publishers.mean != rp.cells[c].publishers.mean) {
                std::fprintf(stderr, "sweep mismatch between serial and parallel runs\n");
                return 1;
            }
    }

    return 0;
}
