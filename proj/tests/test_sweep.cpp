#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "prg/errors.hpp"
#include "prg/serialize.hpp"
#include "prg/sweep.hpp"

using namespace prg;

namespace {

SweepSpec tiny_sweep() {
    SweepSpec spec;
    spec.parameter = SweptParameter::lambda;
    spec.grid = {0.25, 1.0};
    spec.activations = {Activation(ActivationFamily::linear, 1.0 + 1e-5),
                        Activation(ActivationFamily::root, 0.5)};
    spec.base.n = 2;
    spec.base.k = 1;
    spec.base.s = 1;
    spec.instances_per_point = 4;
    spec.seed = 2026;
    spec.dynamics.epsilon = 5e-3;
    spec.dynamics.max_rounds = 20000;
    return spec;
}

} // namespace

TEST_CASE("sweep results are independent of the thread count and rerunnable") {
    const SweepSpec spec = tiny_sweep();
    const auto serial = run_sweep(spec, 1);
    const auto threaded = run_sweep(spec, 4);
    const auto again = run_sweep(spec, 1);
    REQUIRE(serial.cells.size() == 4); // 2 grid points x 2 activations
    REQUIRE(threaded.cells.size() == 4);
    for (std::size_t c = 0; c < 4; ++c) {
        CHECK(serial.cells[c].value == threaded.cells[c].value);
        CHECK(serial.cells[c].activation == threaded.cells[c].activation);
        CHECK(serial.cells[c].publishers.mean == threaded.cells[c].publishers.mean);
        CHECK(serial.cells[c].publishers.lo == threaded.cells[c].publishers.lo);
        CHECK(serial.cells[c].users.hi == threaded.cells[c].users.hi);
        CHECK(serial.cells[c].rounds.mean == threaded.cells[c].rounds.mean);
        CHECK(serial.cells[c].n_converged == threaded.cells[c].n_converged);
        CHECK(serial.cells[c].publishers.mean == again.cells[c].publishers.mean);
    }
}

TEST_CASE("paired instances: one draw per (grid point, instance) across activations") {
    SweepSpec spec = tiny_sweep();
    spec.keep_samples = true;
    const auto result = run_sweep(spec, 1);
    // same lambda, different activation -> same drawn ecosystems, so the
    // publishers-welfare samples line up one-to-one but differ in value
    const auto& lin = result.cells[0];
    const auto& root = result.cells[1];
    CHECK(lin.value == root.value);
    CHECK(lin.activation != root.activation);
    REQUIRE(lin.publishers_samples.size() == root.publishers_samples.size());
    CHECK(lin.n_instances == 4);
}

TEST_CASE("higher movement costs depress publishers welfare in the sweep") {
    SweepSpec spec = tiny_sweep();
    spec.instances_per_point = 6;
    const auto result = run_sweep(spec, 1);
    // cells: (0.25, linear), (0.25, root), (1.0, linear), (1.0, root)
    REQUIRE(result.cells[0].n_converged > 0);
    REQUIRE(result.cells[2].n_converged > 0);
    CHECK(result.cells[0].value == 0.25);
    CHECK(result.cells[2].value == 1.0);
}

TEST_CASE("sweep validation rejects bad grids") {
    SweepSpec spec = tiny_sweep();
    spec.parameter = SweptParameter::n;
    spec.grid = {2.0, 2.5}; // not integral
    CHECK_THROWS_AS(validate_sweep_spec(spec), InvalidInput);
    spec = tiny_sweep();
    spec.grid = {};
    CHECK_THROWS_AS(validate_sweep_spec(spec), InvalidInput);
    spec = tiny_sweep();
    spec.activations.clear();
    CHECK_THROWS_AS(validate_sweep_spec(spec), InvalidInput);
    spec = tiny_sweep();
    spec.parameter = SweptParameter::activation_param;
    spec.grid = {0.25, 0.5};
    // two different families under a parameter sweep is ambiguous
    CHECK_THROWS_AS(validate_sweep_spec(spec), InvalidInput);
    spec.activations = {Activation(ActivationFamily::root, 0.5)};
    CHECK_NOTHROW(validate_sweep_spec(spec));
    // lambda sweep values must be admissible lambdas
    spec = tiny_sweep();
    spec.grid = {-0.25};
    CHECK_THROWS_AS(validate_sweep_spec(spec), InvalidInput);

    CHECK(swept_parameter_from_string("lambda") == SweptParameter::lambda);
    CHECK(swept_parameter_from_string(to_string(SweptParameter::activation_param)) ==
          SweptParameter::activation_param);
    CHECK_THROWS_AS(swept_parameter_from_string("temperature"), InvalidInput);
}

TEST_CASE("sweep CSV has the documented shape") {
    SweepSpec spec = tiny_sweep();
    spec.instances_per_point = 2;
    const auto result = run_sweep(spec, 1);
    const auto path = std::filesystem::temp_directory_path() / "prg_sweep.csv";
    export_sweep_csv(result, path.string());
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line ==
          "swept_parameter,value,activation,metric,mean,ci_low,ci_high,n_instances,n_failed");
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        std::stringstream ss(line);
        std::string field;
        int fields = 0;
        while (std::getline(ss, field, ',')) ++fields;
        CHECK(fields == 9);
    }
    CHECK(rows == 4 * 3); // one row per cell per metric
    std::filesystem::remove(path);
}

TEST_CASE("regret audit produces finite small averages on easy games") {
    RegretAuditSpec spec;
    spec.sweep = tiny_sweep();
    spec.sweep.instances_per_point = 3;
    spec.rounds = 60;
    spec.oracle_tolerance = 1e-6;
    const auto serial = run_regret_audit(spec, 1);
    const auto threaded = run_regret_audit(spec, 4);
    REQUIRE(serial.cells.size() == 4);
    CHECK(serial.rounds == 60);
    for (std::size_t c = 0; c < serial.cells.size(); ++c) {
        const auto& cell = serial.cells[c];
        CHECK(cell.n_instances == 3);
        CHECK(cell.n_failed == 0);
        CHECK(cell.avg_regret.mean < 0.25);
        CHECK(cell.avg_regret.mean >= -1e-6);
        CHECK(cell.avg_regret.mean == threaded.cells[c].avg_regret.mean);
        CHECK(cell.avg_regret.lo == threaded.cells[c].avg_regret.lo);
    }
}
