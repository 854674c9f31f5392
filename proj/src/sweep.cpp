#include "prg/sweep.hpp"

#include <cmath>
#include <limits>

#include "prg/errors.hpp"
#include "prg/par.hpp"
#include "prg/regret.hpp"
#include "prg/rng.hpp"

namespace prg {

SweptParameter swept_parameter_from_string(const std::string& name) {
    if (name == "lambda") return SweptParameter::lambda;
    if (name == "n") return SweptParameter::n;
    if (name == "s") return SweptParameter::s;
    if (name == "k") return SweptParameter::k;
    if (name == "activation-param") return SweptParameter::activation_param;
    throw InvalidInput("unknown swept parameter: " + name);
}

std::string to_string(SweptParameter parameter) {
    switch (parameter) {
        case SweptParameter::lambda: return "lambda";
        case SweptParameter::n: return "n";
        case SweptParameter::s: return "s";
        case SweptParameter::k: return "k";
        case SweptParameter::activation_param: return "activation-param";
    }
    return "?";
}

namespace {

bool integral(double v) { return std::floor(v) == v && v >= 1.0; }

// The ecosystem shape and the activation at one grid value.
struct CellConfig {
    EcosystemSpec eco;
    Activation activation;
};

CellConfig cell_config(const SweepSpec& spec, double value, const Activation& act) {
    CellConfig cfg{spec.base, act};
    switch (spec.parameter) {
        case SweptParameter::lambda: cfg.eco.lambda = value; break;
        case SweptParameter::n: cfg.eco.n = static_cast<std::size_t>(value); break;
        case SweptParameter::s: cfg.eco.s = static_cast<std::size_t>(value); break;
        case SweptParameter::k: cfg.eco.k = static_cast<std::size_t>(value); break;
        case SweptParameter::activation_param:
            cfg.activation = Activation(act.family(), value);
            break;
    }
    return cfg;
}

} // namespace

void validate_sweep_spec(const SweepSpec& spec) {
    if (spec.grid.empty()) throw InvalidInput("sweep: empty grid");
    if (spec.activations.empty()) throw InvalidInput("sweep: no activations");
    if (spec.instances_per_point == 0) throw InvalidInput("sweep: need instances");
    if (spec.parameter == SweptParameter::activation_param && spec.activations.size() != 1)
        throw InvalidInput("sweep: the activation-parameter sweep takes exactly one family");
    if (spec.parameter == SweptParameter::n || spec.parameter == SweptParameter::s ||
        spec.parameter == SweptParameter::k) {
        for (double v : spec.grid)
            if (!integral(v)) throw InvalidInput("sweep: n/s/k grid values must be integers");
    }
    // every cell must produce a valid ecosystem / activation
    for (double v : spec.grid)
        for (const Activation& act : spec.activations)
            validate_ecosystem_spec(cell_config(spec, v, act).eco);
}

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
    validate_sweep_spec(spec);
    const std::size_t G = spec.grid.size();
    const std::size_t A = spec.activations.size();
    const std::size_t J = spec.instances_per_point;

    struct Slot {
        bool converged = false;
        bool errored = false;
        double publishers = 0.0, users = 0.0, rounds = 0.0;
    };
    std::vector<Slot> slots(G * A * J);

    DynamicsConfig dyn = spec.dynamics;
    dyn.record_ledger = false;
    dyn.last_iterate_diagnostic = false;
    dyn.jobs = 1; // parallelism lives at the instance level

    parallel_for(slots.size(), jobs, [&](std::size_t idx) {
        const std::size_t g = idx / (A * J);
        const std::size_t a = (idx / J) % A;
        const std::size_t j = idx % J;
        Slot& slot = slots[idx];
        try {
            const CellConfig cfg = cell_config(spec, spec.grid[g], spec.activations[a]);
            const PublishersGame game =
                sample_instance(cfg.eco, cfg.activation, derive_seed(spec.seed, g, j));
            const DynamicsResult res = run_dynamics(game, dyn);
            slot.converged = res.report.converged;
            if (slot.converged) {
                slot.publishers = res.report.publishers_welfare;
                slot.users = res.report.users_welfare;
                slot.rounds = static_cast<double>(res.report.rounds);
            }
        } catch (const std::exception&) {
            slot.errored = true;
        }
    });

    SweepResult out;
    out.parameter = to_string(spec.parameter);
    out.cells.reserve(G * A);
    for (std::size_t g = 0; g < G; ++g) {
        for (std::size_t a = 0; a < A; ++a) {
            SweepCell cell;
            cell.value = spec.grid[g];
            cell.activation = to_string(spec.activations[a].family());
            cell.n_instances = J;
            for (std::size_t j = 0; j < J; ++j) {
                const Slot& slot = slots[(g * A + a) * J + j];
                if (slot.converged) {
                    ++cell.n_converged;
                    cell.publishers_samples.push_back(slot.publishers);
                    cell.users_samples.push_back(slot.users);
                    cell.rounds_samples.push_back(slot.rounds);
                }
            }
            cell.n_failed = J - cell.n_converged;
            cell.flagged = 2 * cell.n_failed > J;
            if (cell.n_converged > 0) {
                const std::uint64_t bseed = derive_seed(spec.seed, 0xb007, g * A + a);
                cell.publishers = bootstrap_ci(cell.publishers_samples, spec.bootstrap_B,
                                               spec.confidence, derive_seed(bseed, 0));
                cell.users = bootstrap_ci(cell.users_samples, spec.bootstrap_B, spec.confidence,
                                          derive_seed(bseed, 1));
                cell.rounds = bootstrap_ci(cell.rounds_samples, spec.bootstrap_B, spec.confidence,
                                           derive_seed(bseed, 2));
            } else {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                cell.publishers = cell.users = cell.rounds = BootstrapCI{nan, nan, nan};
            }
            if (!spec.keep_samples) {
                cell.publishers_samples.clear();
                cell.users_samples.clear();
                cell.rounds_samples.clear();
            }
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

RegretAuditResult run_regret_audit(const RegretAuditSpec& spec, int jobs) {
    validate_sweep_spec(spec.sweep);
    if (spec.rounds == 0) throw InvalidInput("regret audit: rounds must be positive");
    if (!(spec.oracle_tolerance > 0.0))
        throw InvalidInput("regret audit: tolerance must be positive");
    const SweepSpec& sw = spec.sweep;
    const std::size_t G = sw.grid.size(), A = sw.activations.size(), J = sw.instances_per_point;

    struct Slot {
        bool ok = false;
        double avg_regret = 0.0;
    };
    std::vector<Slot> slots(G * A * J);

    std::vector<LearnerSpec> learners = sw.dynamics.learners;
    if (learners.empty()) learners.push_back(LearnerSpec{});

    parallel_for(slots.size(), jobs, [&](std::size_t idx) {
        const std::size_t g = idx / (A * J);
        const std::size_t a = (idx / J) % A;
        const std::size_t j = idx % J;
        Slot& slot = slots[idx];
        try {
            const CellConfig cfg = cell_config(sw, sw.grid[g], sw.activations[a]);
            const PublishersGame game =
                sample_instance(cfg.eco, cfg.activation, derive_seed(sw.seed, g, j));
            const RegretLedger ledger = play_rounds(game, learners, spec.rounds);
            slot.avg_regret =
                average_regret_at_T(game, ledger, spec.rounds, spec.oracle_tolerance);
            slot.ok = true;
        } catch (const std::exception&) {
            slot.ok = false;
        }
    });

    RegretAuditResult out;
    out.parameter = to_string(sw.parameter);
    out.rounds = spec.rounds;
    for (std::size_t g = 0; g < G; ++g) {
        for (std::size_t a = 0; a < A; ++a) {
            RegretAuditCell cell;
            cell.value = sw.grid[g];
            cell.activation = to_string(sw.activations[a].family());
            cell.n_instances = J;
            for (std::size_t j = 0; j < J; ++j) {
                const Slot& slot = slots[(g * A + a) * J + j];
                if (slot.ok) cell.samples.push_back(slot.avg_regret);
            }
            cell.n_failed = J - cell.samples.size();
            if (!cell.samples.empty())
                cell.avg_regret = bootstrap_ci(cell.samples, sw.bootstrap_B, sw.confidence,
                                               derive_seed(sw.seed, 0xad17, g * A + a));
            if (!sw.keep_samples) cell.samples.clear();
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

} // namespace prg
