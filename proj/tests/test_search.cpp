#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "wyskew/search.hpp"
#include "wyskew/witness.hpp"

using namespace wyskew;

namespace {

SearchConfig qubit_config(std::size_t sites) {
    SearchConfig cfg;
    cfg.n_sites = sites;
    cfg.local_dim = 2;
    cfg.observable = witness_observable();
    return cfg;
}

const std::vector<double> kWitnessParams = {2.0, 4.0, 4.0, 1.0, 4.0, 1.0, 1.0, 0.0};

}  // namespace

TEST_CASE("nelder-mead maximizes simple bowls") {
    const auto bowl = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return -s;
    };
    const std::vector<double> start{1.0, 1.0};
    const NelderMeadResult result = nelder_mead(bowl, start, 500, 1e-12);
    CHECK(std::sqrt(-result.value) <= 1e-4);
    CHECK(result.converged);

    const auto shifted = [](std::span<const double> x) {
        return -(x[0] - 3.0) * (x[0] - 3.0);
    };
    const std::vector<double> zero{0.0};
    const NelderMeadResult line = nelder_mead(shifted, zero, 500, 1e-14);
    CHECK(std::abs(line.x[0] - 3.0) <= 1e-4);
}

TEST_CASE("objective value at the witness amplitudes") {
    const SearchConfig cfg = qubit_config(3);
    // Unnormalized integer amplitudes; normalization happens inside.
    const double value = objective_eval(kWitnessParams, cfg);
    CHECK(std::abs(value - (-closed_form_witness_slack())) <= 1e-12);
}

TEST_CASE("objective is projectively invariant") {
    const SearchConfig cfg = qubit_config(3);
    const double base = objective_eval(kWitnessParams, cfg);

    std::vector<double> doubled = kWitnessParams;
    for (double &v : doubled) v *= 2.0;  // power of two: bit-exact scaling
    CHECK(objective_eval(doubled, cfg) == base);

    std::vector<double> scaled = kWitnessParams;
    for (double &v : scaled) v *= 2.7;
    CHECK(std::abs(objective_eval(scaled, cfg) - base) <= 1e-12);
}

TEST_CASE("degenerate parameter vectors hit the rejection value") {
    const SearchConfig cfg = qubit_config(3);
    CHECK(objective_eval(std::vector<double>(8, 0.0), cfg) == kRejectionValue);
    CHECK(objective_eval(std::vector<double>(7, 1.0), cfg) == kRejectionValue);
    std::vector<double> bad(8, 1.0);
    bad[3] = std::nan("");
    CHECK(objective_eval(bad, cfg) == kRejectionValue);
}

TEST_CASE("basis states sit at zero slack") {
    const SearchConfig cfg = qubit_config(3);
    std::vector<double> basis(8, 0.0);
    basis[0] = 1.0;
    CHECK(std::abs(objective_eval(basis, cfg)) <= 1e-12);
}

TEST_CASE("optimizing from the witness never degrades it") {
    const SearchConfig cfg = qubit_config(3);
    const double start_value = objective_eval(kWitnessParams, cfg);
    const NelderMeadResult result = nelder_mead(
        [&cfg](std::span<const double> x) { return objective_eval(x, cfg); }, kWitnessParams,
        2000, 1e-10);
    CHECK(result.value >= start_value);
    CHECK(result.value >= 0.019279 - 1e-9);

    for (std::size_t i = 1; i < result.trace.size(); ++i)
        CHECK(result.trace[i].objective > result.trace[i - 1].objective);
}

TEST_CASE("search finds the three-qubit violation") {
    SearchConfig cfg = qubit_config(3);
    cfg.restarts = 16;
    cfg.max_iters = 2000;
    cfg.master_seed = 42;
    const SearchResult result = run_search(cfg);
    CHECK(result.best_violation >= 0.0192);
    CHECK(result.best_report.violated);
    CHECK(std::abs(result.best_violation + result.best_report.slack) <= 1e-15);
    CHECK(result.rng_algorithm == std::string("xoshiro256++/splitmix64"));
}

TEST_CASE("no violation exists for two sites") {
    SearchConfig cfg = qubit_config(2);
    cfg.restarts = 8;
    cfg.max_iters = 800;
    cfg.master_seed = 7;
    const SearchResult result = run_search(cfg);
    CHECK(result.best_violation <= 1e-8);
    CHECK_FALSE(result.best_report.violated);
}

TEST_CASE("n-partite objective also recovers the violation") {
    SearchConfig cfg = qubit_config(3);
    cfg.objective = InequalityId::n_partite;
    cfg.restarts = 8;
    cfg.max_iters = 2000;
    cfg.master_seed = 5;
    const SearchResult result = run_search(cfg);
    CHECK(result.best_violation >= 0.0192);
}

TEST_CASE("runs are deterministic and thread-count independent") {
    SearchConfig cfg = qubit_config(3);
    cfg.restarts = 6;
    cfg.max_iters = 400;
    cfg.master_seed = 123;

    const SearchResult serial_a = run_search(cfg, 1);
    const SearchResult serial_b = run_search(cfg, 1);
    const SearchResult parallel = run_search(cfg, 4);

    CHECK(serial_a.best_violation == serial_b.best_violation);
    CHECK(serial_a.best_violation == parallel.best_violation);
    CHECK(serial_a.restart_index == parallel.restart_index);
    CHECK(serial_a.seed_used == parallel.seed_used);
    CHECK(serial_a.iterations_used == parallel.iterations_used);
    REQUIRE(serial_a.best_state.total_dim() == parallel.best_state.total_dim());
    for (std::size_t i = 0; i < serial_a.best_state.total_dim(); ++i)
        CHECK(serial_a.best_state.amplitude(i) == parallel.best_state.amplitude(i));
}

TEST_CASE("configuration validation") {
    SearchConfig cfg = qubit_config(3);
    cfg.restarts = 0;
    CHECK_THROWS_AS(run_search(cfg), std::invalid_argument);

    cfg = qubit_config(3);
    cfg.n_sites = 1;
    CHECK_THROWS_AS(run_search(cfg), std::invalid_argument);

    cfg = qubit_config(3);
    cfg.observable = HermitianMatrix::identity(3);
    CHECK_THROWS_AS(run_search(cfg), std::invalid_argument);

    cfg = qubit_config(3);
    cfg.objective = InequalityId::bipartite;
    CHECK_THROWS_AS(run_search(cfg), std::invalid_argument);
}

TEST_CASE("complex-amplitude mode doubles the parameter count and works") {
    SearchConfig cfg = qubit_config(2);
    cfg.complex_amplitudes = true;
    CHECK(parameter_count(cfg) == 8);

    cfg.restarts = 4;
    cfg.max_iters = 400;
    cfg.master_seed = 9;
    const SearchResult result = run_search(cfg);
    CHECK(result.best_violation <= 1e-8);
}
