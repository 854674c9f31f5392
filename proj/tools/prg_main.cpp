// prg: batch front end for the publishers' game library.
//
// Subcommands delegate to the library operation of the same name and write
// their results as JSON/CSV into --out.  Option precedence is command-line
// flag > --config file entry > built-in default, and every run records the
// resolved values with their sources in <out>/manifest.json.
//
// Exit codes: 0 success (simulate: converged), 1 usage or runtime error,
// 2 simulate hit max-rounds without certifying.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prg/analysis.hpp"
#include "prg/dynamics.hpp"
#include "prg/errors.hpp"
#include "prg/sampler.hpp"
#include "prg/serialize.hpp"
#include "prg/softmax_study.hpp"
#include "prg/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace prg;

int default_jobs() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Flag > config > default, with the winning source remembered per field.
class OptionBag {
  public:
    OptionBag(const CLI::App* cmd, std::string config_path) : cmd_(cmd) {
        if (!config_path.empty()) config_ = read_json(config_path);
    }

    template <typename T>
    T get(const std::string& flag, T flag_value, T fallback) {
        std::string key = flag;
        for (char& ch : key)
            if (ch == '-') ch = '_';
        T value = fallback;
        const char* source = "default";
        if (config_.contains(key)) {
            value = config_.at(key).get<T>();
            source = "config";
        }
        if (cmd_->count("--" + flag) > 0) {
            value = flag_value;
            source = "flag";
        }
        resolved_[key] = value;
        sources_[key] = source;
        return value;
    }

    json manifest(const std::string& command) const {
        return json{{"command", command}, {"options", resolved_}, {"sources", sources_}};
    }

  private:
    const CLI::App* cmd_;
    json config_ = json::object();
    json resolved_ = json::object();
    json sources_ = json::object();
};

std::string out_path(const std::string& dir, const std::string& file) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / file).string();
}

// Shared flag storage; each subcommand registers the subset it uses.
struct Flags {
    std::string config, out = ".";
    std::uint64_t seed = 0;
    int jobs = default_jobs();

    std::uint64_t n = 3, s = 3, k = 3;
    double lambda = 0.5;
    std::string sampler = "uniform-iid";
    double sigma = 0.2, rho_docs = 0.0, rho_atoms = 0.0;

    std::string activation = "linear";
    double param = std::numeric_limits<double>::quiet_NaN(); // family default

    double epsilon = 1e-4, oracle_tol = 0.0, eta0 = 0.5;
    std::uint64_t max_rounds = 200000, check_every = 10;
    std::string learner = "projected-gradient-ascent", schedule = "inverse-sqrt";

    std::string parameter = "lambda";
    std::vector<double> grid;
    std::vector<std::string> activations{"linear", "root", "log"};
    std::uint64_t instances = 50, bootstrap_B = 500;
    double confidence = 0.95;

    std::uint64_t rounds = 100, trace_rounds = 5000;
    double c1 = 0.5, ahat = 0.5, beta = 10.0, tol = 1e-12;
    std::uint64_t samples = 10000;
    std::vector<std::uint64_t> checkpoints;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--seed", f.seed, "RNG master seed")->capture_default_str();
    cmd->add_option("--out", f.out, "output directory")->capture_default_str();
    cmd->add_option("--config", f.config, "JSON config file (flag > config > default)");
    cmd->add_option("--jobs", f.jobs, "worker threads")->capture_default_str();
}

void add_ecosystem(CLI::App* cmd, Flags& f) {
    cmd->add_option("--n", f.n, "players")->capture_default_str();
    cmd->add_option("--s", f.s, "information needs per instance")->capture_default_str();
    cmd->add_option("--k", f.k, "embedding dimension")->capture_default_str();
    cmd->add_option("--lambda", f.lambda, "movement penalty weight")->capture_default_str();
    cmd->add_option("--sampler", f.sampler, "uniform-iid | truncated-normal")
        ->capture_default_str();
    cmd->add_option("--sigma", f.sigma, "truncated-normal sd")->capture_default_str();
    cmd->add_option("--rho-docs", f.rho_docs, "doc AR(1) correlation")->capture_default_str();
    cmd->add_option("--rho-atoms", f.rho_atoms, "atom AR(1) correlation")->capture_default_str();
}

void add_activation(CLI::App* cmd, Flags& f) {
    cmd->add_option("--activation", f.activation, "linear | root | log | exponential")
        ->capture_default_str();
    cmd->add_option("--param", f.param, "activation hyperparameter (default per family)");
}

void add_dynamics(CLI::App* cmd, Flags& f) {
    cmd->add_option("--epsilon", f.epsilon, "target certified gap")->capture_default_str();
    cmd->add_option("--max-rounds", f.max_rounds, "round budget")->capture_default_str();
    cmd->add_option("--check-every", f.check_every, "certification cadence")
        ->capture_default_str();
    cmd->add_option("--oracle-tol", f.oracle_tol, "certifier tolerance (0: epsilon/10)")
        ->capture_default_str();
    cmd->add_option("--learner", f.learner, "projected-gradient-ascent | optimistic-gradient-ascent")
        ->capture_default_str();
    cmd->add_option("--eta0", f.eta0, "initial step size")->capture_default_str();
    cmd->add_option("--schedule", f.schedule, "constant | inverse-sqrt")->capture_default_str();
}

EcosystemSpec ecosystem_from(OptionBag& bag, const Flags& f) {
    EcosystemSpec spec;
    spec.kind = sampler_kind_from_string(bag.get<std::string>("sampler", f.sampler, "uniform-iid"));
    spec.n = bag.get<std::uint64_t>("n", f.n, 3);
    spec.s = bag.get<std::uint64_t>("s", f.s, 3);
    spec.k = bag.get<std::uint64_t>("k", f.k, 3);
    spec.lambda = bag.get<double>("lambda", f.lambda, 0.5);
    spec.sigma = bag.get<double>("sigma", f.sigma, 0.2);
    spec.rho_docs = bag.get<double>("rho-docs", f.rho_docs, 0.0);
    spec.rho_atoms = bag.get<double>("rho-atoms", f.rho_atoms, 0.0);
    return spec;
}

Activation activation_from(OptionBag& bag, const Flags& f) {
    const auto family =
        activation_family_from_string(bag.get<std::string>("activation", f.activation, "linear"));
    double param = bag.get<double>("param", f.param, Activation::default_param(family));
    if (std::isnan(param)) param = Activation::default_param(family);
    return Activation(family, param);
}

DynamicsConfig dynamics_from(OptionBag& bag, const Flags& f, int jobs) {
    DynamicsConfig cfg;
    cfg.epsilon = bag.get<double>("epsilon", f.epsilon, 1e-4);
    cfg.max_rounds = bag.get<std::uint64_t>("max-rounds", f.max_rounds, 200000);
    cfg.check_every = bag.get<std::uint64_t>("check-every", f.check_every, 10);
    cfg.oracle_tolerance = bag.get<double>("oracle-tol", f.oracle_tol, 0.0);
    LearnerSpec learner;
    learner.kind = learner_kind_from_string(
        bag.get<std::string>("learner", f.learner, "projected-gradient-ascent"));
    learner.eta0 = bag.get<double>("eta0", f.eta0, 0.5);
    learner.schedule =
        step_schedule_from_string(bag.get<std::string>("schedule", f.schedule, "inverse-sqrt"));
    cfg.learners = {learner};
    cfg.jobs = jobs;
    return cfg;
}

// --- subcommands ---------------------------------------------------------

int cmd_simulate(const CLI::App* cmd, Flags& f) {
    OptionBag bag(cmd, f.config);
    const std::uint64_t seed = bag.get<std::uint64_t>("seed", f.seed, 0);
    const int jobs = bag.get<int>("jobs", f.jobs, default_jobs());
    const std::string out = bag.get<std::string>("out", f.out, ".");
    const EcosystemSpec eco = ecosystem_from(bag, f);
    const Activation act = activation_from(bag, f);
    DynamicsConfig cfg = dynamics_from(bag, f, jobs);

    const PublishersGame game = sample_instance(eco, act, seed);
    const DynamicsResult result = run_dynamics(game, cfg);

    write_json(report_to_json(result.report), out_path(out, "report.json"));
    export_ledger_csv(result.ledger, out_path(out, "trajectory.csv"));
    json manifest = bag.manifest("simulate");
    manifest["game"] = game_to_json(game);
    write_json(manifest, out_path(out, "manifest.json"));

    std::printf("simulate: converged=%s rounds=%llu gap=%.6g certified=%.6g out=%s\n",
                result.report.converged ? "yes" : "no",
                static_cast<unsigned long long>(result.report.rounds), result.report.gap,
                result.report.certified_epsilon, out.c_str());
    return result.report.converged ? 0 : 2;
}

std::vector<Activation> parse_activation_list(const std::vector<std::string>& names) {
    std::vector<Activation> acts;
    for (const std::string& name : names) {
        const auto family = activation_family_from_string(name);
        acts.emplace_back(family, Activation::default_param(family));
    }
    return acts;
}

SweepSpec sweep_from(OptionBag& bag, Flags& f) {
    SweepSpec spec;
    spec.parameter = swept_parameter_from_string(
        bag.get<std::string>("parameter", f.parameter, "lambda"));
    spec.grid = bag.get<std::vector<double>>("grid", f.grid, {});
    spec.activations = parse_activation_list(bag.get<std::vector<std::string>>(
        "activations", f.activations, {"linear", "root", "log"}));
    spec.base = ecosystem_from(bag, f);
    spec.instances_per_point = bag.get<std::uint64_t>("instances", f.instances, 50);
    spec.seed = bag.get<std::uint64_t>("seed", f.seed, 0);
    spec.dynamics = dynamics_from(bag, f, 1); // per-instance runs stay serial
    spec.dynamics.record_ledger = false;
    spec.bootstrap_B = bag.get<std::uint64_t>("bootstrap-B", f.bootstrap_B, 500);
    spec.confidence = bag.get<double>("confidence", f.confidence, 0.95);
    return spec;
}

int cmd_sweep(const CLI::App* cmd, Flags& f) {
    OptionBag bag(cmd, f.config);
    const int jobs = bag.get<int>("jobs", f.jobs, default_jobs());
    const std::string out = bag.get<std::string>("out", f.out, ".");
    SweepSpec spec = sweep_from(bag, f);

    const SweepResult result = run_sweep(spec, jobs);

    export_sweep_csv(result, out_path(out, "sweep.csv"));
    json manifest = bag.manifest("sweep");
    manifest["spec"] = sweep_manifest(spec);
    write_json(manifest, out_path(out, "manifest.json"));

    std::size_t flagged = 0;
    for (const SweepCell& cell : result.cells) flagged += cell.flagged ? 1 : 0;
    std::printf("sweep: parameter=%s cells=%zu flagged=%zu out=%s\n", result.parameter.c_str(),
                result.cells.size(), flagged, out.c_str());
    return 0;
}

int cmd_concavity(const CLI::App* cmd, Flags& f) {
    OptionBag bag(cmd, f.config);
    const std::uint64_t seed = bag.get<std::uint64_t>("seed", f.seed, 0);
    const int jobs = bag.get<int>("jobs", f.jobs, default_jobs());
    const std::string out = bag.get<std::string>("out", f.out, ".");
    const std::uint64_t samples = bag.get<std::uint64_t>("samples", f.samples, 10000);
    const EcosystemSpec eco = ecosystem_from(bag, f);
    const Activation act = activation_from(bag, f);

    const PublishersGame game = sample_instance(eco, act, seed);
    const ConcavityVerdict verdict = audit_concavity(game, samples, seed, jobs);

    write_json(verdict_to_json(verdict), out_path(out, "verdict.json"));
    write_json(bag.manifest("concavity"), out_path(out, "manifest.json"));

    std::printf("concavity: activation_concave=%s own_violations=%llu "
                "opponent_violations=%llu out=%s\n",
                verdict.activation_concave ? "true" : "false",
                static_cast<unsigned long long>(verdict.own_concavity_violations),
                static_cast<unsigned long long>(verdict.opponent_convexity_violations),
                out.c_str());
    return 0;
}

int cmd_equilibrium(const CLI::App* cmd, Flags& f) {
    OptionBag bag(cmd, f.config);
    const std::string out = bag.get<std::string>("out", f.out, ".");
    SymmetricInstance inst;
    inst.n = bag.get<std::uint64_t>("n", f.n, 3);
    inst.c1 = bag.get<double>("c1", f.c1, 0.5);
    inst.lambda = bag.get<double>("lambda", f.lambda, 0.5);
    inst.activation = activation_from(bag, f);
    const double tol = bag.get<double>("tol", f.tol, 1e-12);

    const SymmetricEquilibrium eq = symmetric_equilibrium(inst, tol);

    json root{{"alpha_eq", eq.alpha_eq},
              {"users_welfare", eq.users_welfare},
              {"n", inst.n},
              {"c1", inst.c1},
              {"lambda", inst.lambda},
              {"activation",
               {{"family", to_string(inst.activation.family())}, {"param", inst.activation.param()}}}};
    write_json(root, out_path(out, "equilibrium.json"));
    write_json(bag.manifest("equilibrium"), out_path(out, "manifest.json"));

    std::printf("equilibrium: alpha_eq=%.6f users_welfare=%.6f out=%s\n", eq.alpha_eq,
                eq.users_welfare, out.c_str());
    return 0;
}

int cmd_counterexample(const CLI::App* cmd, Flags& f) {
    OptionBag bag(cmd, f.config);
    const std::string out = bag.get<std::string>("out", f.out, ".");
    const Activation act = activation_from(bag, f);
    const double ahat = bag.get<double>("ahat", f.ahat, 0.5);

    const PublishersGame game = build_counterexample(act, ahat);
    const double f2 = counterexample_second_derivative(act, game.n, ahat);

    json doc{{"n", game.n}, {"ahat", ahat}, {"f_second", f2}, {"game", game_to_json(game)}};
    write_json(doc, out_path(out, "counterexample.json"));
    write_json(bag.manifest("counterexample"), out_path(out, "manifest.json"));

    std::printf("counterexample: n=%zu f_second=%.6f out=%s\n", game.n, f2, out.c_str());
    return 0;
}

int cmd_regret_audit(const CLI::App* cmd, Flags& f) {
    OptionBag bag(cmd, f.config);
    const int jobs = bag.get<int>("jobs", f.jobs, default_jobs());
    const std::string out = bag.get<std::string>("out", f.out, ".");
    RegretAuditSpec spec;
    spec.sweep = sweep_from(bag, f);
    spec.rounds = bag.get<std::uint64_t>("rounds", f.rounds, 100);
    spec.oracle_tolerance = bag.get<double>("oracle-tol", f.oracle_tol, 1e-6);
    if (spec.oracle_tolerance <= 0.0) spec.oracle_tolerance = 1e-6;

    const RegretAuditResult result = run_regret_audit(spec, jobs);

    export_regret_audit_csv(result, out_path(out, "regret_audit.csv"));
    json manifest = bag.manifest("regret-audit");
    manifest["spec"] = sweep_manifest(spec.sweep);
    manifest["rounds"] = spec.rounds;
    write_json(manifest, out_path(out, "manifest.json"));

    std::printf("regret-audit: parameter=%s rounds=%llu cells=%zu out=%s\n",
                result.parameter.c_str(), static_cast<unsigned long long>(result.rounds),
                result.cells.size(), out.c_str());
    return 0;
}

int cmd_softmax_trace(const CLI::App* cmd, Flags& f) {
    OptionBag bag(cmd, f.config);
    const std::uint64_t seed = bag.get<std::uint64_t>("seed", f.seed, 0);
    const int jobs = bag.get<int>("jobs", f.jobs, default_jobs());
    const std::string out = bag.get<std::string>("out", f.out, ".");
    const double beta = bag.get<double>("beta", f.beta, 10.0);
    EcosystemSpec eco = ecosystem_from(bag, f);

    RegretTraceSpec spec;
    spec.game = sample_instance(eco, Activation(ActivationFamily::exponential, beta), seed);
    spec.rounds = bag.get<std::uint64_t>("rounds", f.trace_rounds, 5000);
    spec.checkpoints = bag.get<std::vector<std::uint64_t>>("checkpoints", f.checkpoints, {});
    double oracle = bag.get<double>("oracle-tol", f.oracle_tol, 1e-5);
    spec.oracle_tolerance = oracle > 0.0 ? oracle : 1e-5;
    LearnerSpec learner;
    learner.kind = learner_kind_from_string(
        bag.get<std::string>("learner", f.learner, "projected-gradient-ascent"));
    learner.eta0 = bag.get<double>("eta0", f.eta0, 0.5);
    learner.schedule =
        step_schedule_from_string(bag.get<std::string>("schedule", f.schedule, "inverse-sqrt"));
    spec.learners = {learner};

    const RegretTraceResult result = softmax_regret_trace(spec, jobs);

    export_trace_csv(result, out_path(out, "trace.csv"));
    json slopes{{"checkpoints", result.checkpoints}};
    for (const PlayerTrace& t : result.sharp) slopes["sharp_slopes"].push_back(t.slope);
    for (const PlayerTrace& t : result.companion) slopes["companion_slopes"].push_back(t.slope);
    write_json(slopes, out_path(out, "trace.json"));
    write_json(bag.manifest("softmax-trace"), out_path(out, "manifest.json"));

    double max_sharp = 0.0;
    for (const PlayerTrace& t : result.sharp) max_sharp = std::max(max_sharp, t.slope);
    std::printf("softmax-trace: rounds=%llu max_sharp_slope=%.6g out=%s\n",
                static_cast<unsigned long long>(spec.rounds), max_sharp, out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"publishers' game simulator: ranking competition dynamics, "
                 "equilibrium certification, and welfare experiments"};
    app.require_subcommand(1);

    Flags f;

    CLI::App* simulate = app.add_subcommand("simulate", "run one instance to convergence");
    add_common(simulate, f);
    add_ecosystem(simulate, f);
    add_activation(simulate, f);
    add_dynamics(simulate, f);

    CLI::App* sweep = app.add_subcommand("sweep", "grid of instances with bootstrap CIs");
    add_common(sweep, f);
    add_ecosystem(sweep, f);
    add_dynamics(sweep, f);
    sweep->add_option("--parameter", f.parameter, "lambda | n | s | k | activation-param")
        ->capture_default_str();
    sweep->add_option("--grid", f.grid, "swept values")->delimiter(',');
    sweep->add_option("--activations", f.activations, "activation families")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--instances", f.instances, "instances per grid point")
        ->capture_default_str();
    sweep->add_option("--bootstrap-B", f.bootstrap_B, "bootstrap resamples")
        ->capture_default_str();
    sweep->add_option("--confidence", f.confidence, "CI level")->capture_default_str();

    CLI::App* concavity = app.add_subcommand("concavity", "randomized concavity audit");
    add_common(concavity, f);
    add_ecosystem(concavity, f);
    add_activation(concavity, f);
    concavity->add_option("--samples", f.samples, "midpoint tests per kind")
        ->capture_default_str();

    CLI::App* equilibrium =
        app.add_subcommand("equilibrium", "symmetric one-need equilibrium by bisection");
    add_common(equilibrium, f);
    add_activation(equilibrium, f);
    equilibrium->add_option("--n", f.n, "players")->capture_default_str();
    equilibrium->add_option("--c1", f.c1, "shared initial distance")->capture_default_str();
    equilibrium->add_option("--lambda", f.lambda, "movement penalty weight")
        ->capture_default_str();
    equilibrium->add_option("--tol", f.tol, "bisection tolerance")->capture_default_str();

    CLI::App* counterexample =
        app.add_subcommand("counterexample", "non-concave witness game construction");
    add_common(counterexample, f);
    add_activation(counterexample, f);
    counterexample->add_option("--ahat", f.ahat, "witness point")->capture_default_str();

    CLI::App* regret_audit =
        app.add_subcommand("regret-audit", "fixed-horizon average-regret table");
    add_common(regret_audit, f);
    add_ecosystem(regret_audit, f);
    add_dynamics(regret_audit, f);
    regret_audit->add_option("--parameter", f.parameter, "lambda | n | s | k | activation-param")
        ->capture_default_str();
    regret_audit->add_option("--grid", f.grid, "swept values")->delimiter(',');
    regret_audit->add_option("--activations", f.activations, "activation families")
        ->delimiter(',')
        ->capture_default_str();
    regret_audit->add_option("--instances", f.instances, "instances per grid point")
        ->capture_default_str();
    regret_audit->add_option("--bootstrap-B", f.bootstrap_B, "bootstrap resamples")
        ->capture_default_str();
    regret_audit->add_option("--confidence", f.confidence, "CI level")->capture_default_str();
    regret_audit->add_option("--rounds", f.rounds, "fixed horizon")->capture_default_str();

    CLI::App* softmax_trace =
        app.add_subcommand("softmax-trace", "regret growth under the exponential ranking");
    add_common(softmax_trace, f);
    add_ecosystem(softmax_trace, f);
    softmax_trace->add_option("--beta", f.beta, "softmax sharpness")->capture_default_str();
    softmax_trace->add_option("--rounds", f.trace_rounds, "horizon")->capture_default_str();
    softmax_trace->add_option("--checkpoints", f.checkpoints, "regret checkpoints")
        ->delimiter(',');
    softmax_trace->add_option("--oracle-tol", f.oracle_tol, "regret oracle tolerance");
    softmax_trace
        ->add_option("--learner", f.learner,
                     "projected-gradient-ascent | optimistic-gradient-ascent")
        ->capture_default_str();
    softmax_trace->add_option("--eta0", f.eta0, "initial step size")->capture_default_str();
    softmax_trace->add_option("--schedule", f.schedule, "constant | inverse-sqrt")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(simulate, f);
        if (sweep->parsed()) return cmd_sweep(sweep, f);
        if (concavity->parsed()) return cmd_concavity(concavity, f);
        if (equilibrium->parsed()) return cmd_equilibrium(equilibrium, f);
        if (counterexample->parsed()) return cmd_counterexample(counterexample, f);
        if (regret_audit->parsed()) return cmd_regret_audit(regret_audit, f);
        if (softmax_trace->parsed()) return cmd_softmax_trace(softmax_trace, f);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::fprintf(stderr, "error: no subcommand\n");
    return 1;
}
