#include "prg/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "prg/errors.hpp"

namespace prg {

namespace {

json points_to_json(const std::vector<Point>& pts) {
    json arr = json::array();
    for (const Point& p : pts) arr.push_back(p);
    return arr;
}

std::vector<Point> points_from_json(const json& arr) {
    std::vector<Point> pts;
    for (const json& p : arr) pts.push_back(p.get<Point>());
    return pts;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << text;
    if (!out) throw InvalidInput("write failed: " + path);
}

// full-precision doubles for CSV cells
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

json game_to_json(const PublishersGame& game) {
    json j;
    j["n"] = game.n;
    j["k"] = game.k;
    j["metric"] = to_string(game.metric);
    j["activation"] = {{"family", to_string(game.activation.family())},
                       {"param", game.activation.param()}};
    j["demand"] = {{"atoms", points_to_json(game.demand.atoms)},
                   {"weights", game.demand.weights}};
    j["initial_docs"] = points_to_json(game.initial_docs);
    j["lambdas"] = game.lambdas;
    return j;
}

PublishersGame game_from_json(const json& j) {
    try {
        DemandDistribution demand;
        demand.atoms = points_from_json(j.at("demand").at("atoms"));
        demand.weights = j.at("demand").at("weights").get<std::vector<double>>();
        const Activation act(activation_family_from_string(j.at("activation").at("family")),
                             j.at("activation").at("param").get<double>());
        return make_game(j.at("n").get<std::size_t>(), j.at("k").get<std::size_t>(),
                         semi_metric_from_string(j.at("metric")), act, std::move(demand),
                         points_from_json(j.at("initial_docs")),
                         j.at("lambdas").get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed game JSON: ") + e.what());
    }
}

PublishersGame load_game(const std::string& path) { return game_from_json(read_json(path)); }

void save_game(const PublishersGame& game, const std::string& path) {
    write_json(game_to_json(game), path);
}

json report_to_json(const ConvergenceReport& report) {
    json j;
    j["converged"] = report.converged;
    j["rounds"] = report.rounds;
    j["gap"] = report.gap;
    j["certified_epsilon"] = report.certified_epsilon;
    if (std::isfinite(report.last_iterate_gap)) j["last_iterate_gap"] = report.last_iterate_gap;
    j["welfare"] = {{"publishers", report.publishers_welfare}, {"users", report.users_welfare}};
    j["final_average"] = points_to_json(report.final_average);
    j["final_profile"] = points_to_json(report.final_profile);
    return j;
}

json verdict_to_json(const ConcavityVerdict& verdict) {
    json j;
    j["activation_concave"] = verdict.activation_concave;
    j["samples"] = verdict.samples;
    j["own_concavity_violations"] = verdict.own_concavity_violations;
    j["opponent_convexity_violations"] = verdict.opponent_convexity_violations;
    if (verdict.witness) {
        const ConcavityWitness& w = *verdict.witness;
        j["witness"] = {{"kind", w.kind},           {"player", w.player},
                        {"atom", w.atom},           {"profile", points_to_json(w.base)},
                        {"segment_p", w.p},         {"segment_q", w.q},
                        {"violation", w.violation}};
    }
    return j;
}

json monotonicity_to_json(const WelfareMonotonicityReport& report) {
    json j;
    j["lambda_grid"] = report.lambda_grid;
    j["v_of_lambda"] = report.v_of_lambda;
    j["n_grid"] = report.n_grid;
    j["v_of_n"] = report.v_of_n;
    j["k_grid"] = report.k_grid;
    j["v_of_k"] = report.v_of_k;
    j["decreasing_in_lambda"] = report.decreasing_in_lambda;
    j["decreasing_in_n"] = report.decreasing_in_n;
    j["constant_in_k"] = report.constant_in_k;
    return j;
}

json sweep_manifest(const SweepSpec& spec) {
    json j;
    j["parameter"] = to_string(spec.parameter);
    j["grid"] = spec.grid;
    json acts = json::array();
    for (const Activation& a : spec.activations)
        acts.push_back({{"family", to_string(a.family())}, {"param", a.param()}});
    j["activations"] = acts;
    j["sampler"] = {{"kind", to_string(spec.base.kind)}, {"n", spec.base.n},
                    {"k", spec.base.k},                  {"s", spec.base.s},
                    {"lambda", spec.base.lambda},        {"mean", spec.base.mean},
                    {"sigma", spec.base.sigma},          {"rho_docs", spec.base.rho_docs},
                    {"rho_atoms", spec.base.rho_atoms}};
    j["instances_per_point"] = spec.instances_per_point;
    j["seed"] = spec.seed;
    const LearnerSpec learner =
        spec.dynamics.learners.empty() ? LearnerSpec{} : spec.dynamics.learners.front();
    j["dynamics"] = {{"epsilon", spec.dynamics.epsilon},
                     {"max_rounds", spec.dynamics.max_rounds},
                     {"check_every", spec.dynamics.check_every},
                     {"oracle_tolerance", spec.dynamics.resolved_tolerance()},
                     {"learner", to_string(learner.kind)},
                     {"eta0", learner.eta0},
                     {"schedule", to_string(learner.schedule)}};
    j["bootstrap_B"] = spec.bootstrap_B;
    j["confidence"] = spec.confidence;
    return j;
}

void export_ledger_csv(const RegretLedger& ledger, const std::string& path) {
    if (ledger.rounds() == 0) throw InvalidInput("ledger export: empty ledger");
    const std::size_t n = ledger.profiles[0].size();
    const std::size_t k = ledger.profiles[0][0].size();
    std::string out = "round,player";
    for (std::size_t c = 0; c < k; ++c) out += ",x" + std::to_string(c);
    out += ",utility\n";
    for (std::size_t t = 0; t < ledger.rounds(); ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            out += std::to_string(t + 1) + "," + std::to_string(i);
            for (std::size_t c = 0; c < k; ++c) out += "," + fmt(ledger.profiles[t][i][c]);
            out += "," + fmt(ledger.utilities[t][i]) + "\n";
        }
    }
    write_text(path, out);
}

void export_sweep_csv(const SweepResult& result, const std::string& path) {
    std::string out =
        "swept_parameter,value,activation,metric,mean,ci_low,ci_high,n_instances,n_failed\n";
    for (const SweepCell& cell : result.cells) {
        const auto row = [&](const char* metric, const BootstrapCI& ci) {
            out += result.parameter + "," + fmt(cell.value) + "," + cell.activation + "," +
                   metric + "," + fmt(ci.mean) + "," + fmt(ci.lo) + "," + fmt(ci.hi) + "," +
                   std::to_string(cell.n_instances) + "," + std::to_string(cell.n_failed) + "\n";
        };
        row("publishers-welfare", cell.publishers);
        row("users-welfare", cell.users);
        row("convergence-rounds", cell.rounds);
    }
    write_text(path, out);
}

void export_regret_audit_csv(const RegretAuditResult& result, const std::string& path) {
    std::string out =
        "swept_parameter,value,activation,metric,mean,ci_low,ci_high,n_instances,n_failed\n";
    for (const RegretAuditCell& cell : result.cells) {
        out += result.parameter + "," + fmt(cell.value) + "," + cell.activation +
               ",average-regret," + fmt(cell.avg_regret.mean) + "," + fmt(cell.avg_regret.lo) +
               "," + fmt(cell.avg_regret.hi) + "," + std::to_string(cell.n_instances) + "," +
               std::to_string(cell.n_failed) + "\n";
    }
    write_text(path, out);
}

void export_trace_csv(const RegretTraceResult& result, const std::string& path) {
    std::string out = "checkpoint,player,game,regret\n";
    const auto rows = [&](const std::vector<PlayerTrace>& traces, const char* tag) {
        for (std::size_t i = 0; i < traces.size(); ++i)
            for (std::size_t cp = 0; cp < result.checkpoints.size(); ++cp)
                out += std::to_string(result.checkpoints[cp]) + "," + std::to_string(i) + "," +
                       tag + "," + fmt(traces[i].regret[cp]) + "\n";
    };
    rows(result.sharp, "exponential");
    rows(result.companion, "linear");
    write_text(path, out);
}

void write_json(const json& j, const std::string& path) { write_text(path, j.dump(2) + "\n"); }

json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open for reading: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return j;
}

} // namespace prg
