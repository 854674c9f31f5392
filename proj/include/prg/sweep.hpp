#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prg/bootstrap.hpp"
#include "prg/dynamics.hpp"
#include "prg/sampler.hpp"

namespace prg {

enum class SweptParameter { lambda, n, s, k, activation_param };

SweptParameter swept_parameter_from_string(const std::string& name);
std::string to_string(SweptParameter parameter);

// A grid of ecosystems crossed with activation families.  Instance seeds
// depend only on (seed, grid index, instance index), so the same drawn
// ecosystems are reused for every activation (paired design), and results are
// bit-identical however many threads run them.
struct SweepSpec {
    SweptParameter parameter = SweptParameter::lambda;
    std::vector<double> grid;            // n/s/k values must be integral
    std::vector<Activation> activations; // exactly one family when sweeping its parameter
    EcosystemSpec base;
    std::size_t instances_per_point = 50;
    std::uint64_t seed = 0;
    DynamicsConfig dynamics;
    std::size_t bootstrap_B = 500;
    double confidence = 0.95;
    bool keep_samples = false; // retain per-instance values alongside the CIs
};

void validate_sweep_spec(const SweepSpec& spec);

struct SweepCell {
    double value = 0.0;
    std::string activation;
    BootstrapCI publishers, users, rounds; // over converged instances
    std::size_t n_instances = 0;
    std::size_t n_converged = 0;
    std::size_t n_failed = 0; // non-converged + errored
    bool flagged = false;     // more than half the instances failed
    std::vector<double> publishers_samples, users_samples, rounds_samples;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepCell> cells; // grid-major, activations inner
};

SweepResult run_sweep(const SweepSpec& spec, int jobs = 1);

// Same pairing, but fixed-length runs scored by the per-round per-player
// hindsight regret (1/(T n)) sum_j Reg_j^T instead of welfare at convergence.
struct RegretAuditSpec {
    SweepSpec sweep;
    std::uint64_t rounds = 100;
    double oracle_tolerance = 1e-6;
};

struct RegretAuditCell {
    double value = 0.0;
    std::string activation;
    BootstrapCI avg_regret;
    std::size_t n_instances = 0;
    std::size_t n_failed = 0;
    std::vector<double> samples;
};

struct RegretAuditResult {
    std::string parameter;
    std::uint64_t rounds = 0;
    std::vector<RegretAuditCell> cells;
};

RegretAuditResult run_regret_audit(const RegretAuditSpec& spec, int jobs = 1);

} // namespace prg
