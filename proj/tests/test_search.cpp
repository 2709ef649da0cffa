// SPDX-License-Identifier: Apache-2.0

#include <fibsic/search.hpp>
#include <fibsic/verify.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace fibsic;

TEST_CASE("haar vectors", "[search]") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const CVector v = haar_random_vector(6, s);
        CHECK(std::abs(norm(v) - 1.0) < 1e-14);
    }
    CHECK(max_abs_diff(haar_random_vector(5, 42), haar_random_vector(5, 42)) == 0.0);
    CHECK(max_abs_diff(haar_random_vector(5, 42), haar_random_vector(5, 43)) > 1e-3);
    CHECK_THROWS_AS(haar_random_vector(0, 1), std::invalid_argument);
}

TEST_CASE("search converges at d = 4", "[search]") {
    SearchConfig cfg;
    cfg.d = 4;
    cfg.master_seed = 42;
    cfg.max_restarts = 50;
    const auto res = search(cfg);
    REQUIRE(res.converged);
    CHECK(std::abs(res.achieved_potential - 0.4) < 1e-12);
    CHECK(res.restarts_used <= 5);
    CHECK(res.coneigen_order == 3);
    CHECK(res.coneigen_rank == 2);
    CHECK(res.coneigen_residual <= 1e-10);

    // equality certificate: the winning vector passes the Gram check
    const auto report = gram_check(res.fiducial, 1e-9);
    CHECK(report.passed);

    // gradient vanishes at the attained bound
    const CMatrix u = antiunitary_unitary_part(fibonacci_matrix(8), 4);
    const SymmetricObjective obj(coneigen_projector(u));
    const auto g = obj.gradient(SymmetricObjective::to_raw(res.fiducial));
    long double nrm = 0.0L;
    for (double v : g) nrm += v * v;
    CHECK(std::sqrt(static_cast<double>(nrm)) <= 1e-8);
}

TEST_CASE("search converges at d = 8", "[search]") {
    SearchConfig cfg;
    cfg.d = 8;
    cfg.master_seed = 7;
    cfg.max_restarts = 100;
    const auto res = search(cfg);
    REQUIRE(res.converged);
    CHECK(std::abs(res.achieved_potential - 2.0 / 9.0) < 1e-12);
    CHECK(res.coneigen_order == 6);
    CHECK(res.coneigen_residual <= 1e-10);
    CHECK(gram_check(res.fiducial, 1e-9).passed);
}

TEST_CASE("search converges at d = 48", "[search]") {
    SearchConfig cfg;
    cfg.d = 48;
    cfg.master_seed = 42;
    cfg.max_restarts = 50;
    const auto res = search(cfg);
    REQUIRE(res.converged);
    CHECK(std::abs(res.achieved_potential - 2.0 / 49.0) < 1e-12);
    CHECK(res.coneigen_order == 12);
    CHECK(res.coneigen_rank == 6);
    CHECK(gram_check(res.fiducial, 1e-9).passed);
}

// heavier regression, run explicitly: fibsic_tests "[.][search-large]"
TEST_CASE("search converges at d = 124", "[.][search-large]") {
    SearchConfig cfg;
    cfg.d = 124;
    cfg.master_seed = 42;
    cfg.max_restarts = 100;
    const auto res = search(cfg);
    REQUIRE(res.converged);
    CHECK(std::abs(res.achieved_potential - 2.0 / 125.0) < 1e-12);
    CHECK(res.coneigen_order == 15);
    CHECK(res.coneigen_rank == 10);
    const auto probe = stabilizer_probe(res.fiducial, {fibonacci_matrix(248)});
    CHECK(probe.outcomes.at(0).accepted);
    CHECK(probe.generated_order == 30);
}

TEST_CASE("iterates stay inside the con-eigenspace", "[search]") {
    SearchConfig cfg;
    cfg.d = 8;
    cfg.master_seed = 3;
    cfg.max_restarts = 20;
    const auto res = search(cfg);
    REQUIRE(!res.fiducial.empty());
    const CMatrix u = antiunitary_unitary_part(fibonacci_matrix(16), 8);
    CHECK(coneigen_residual(res.fiducial, u) <= 1e-10);
}

TEST_CASE("determinism and jobs independence", "[search]") {
    SearchConfig cfg;
    cfg.d = 4;
    cfg.master_seed = 1234;
    cfg.max_restarts = 30;
    cfg.jobs = 1;
    const auto r1 = search(cfg);
    cfg.jobs = 4;
    const auto r2 = search(cfg);
    REQUIRE(r1.fiducial.size() == r2.fiducial.size());
    CHECK(max_abs_diff(r1.fiducial, r2.fiducial) == 0.0);
    CHECK(r1.achieved_potential == r2.achieved_potential);
    CHECK(r1.winning_restart == r2.winning_restart);
    CHECK(r1.restarts_used == r2.restarts_used);
}

TEST_CASE("starved budget reports non-convergence", "[search]") {
    SearchConfig cfg;
    cfg.d = 5;
    cfg.master_seed = 9;
    cfg.max_restarts = 1;
    cfg.max_iterations = 3;
    const auto res = search(cfg);
    CHECK_FALSE(res.converged);
    CHECK(res.achieved_potential > welch_bound(5) + 1e-13);
    CHECK_FALSE(res.fiducial.empty());
}

TEST_CASE("bad symmetry is rejected", "[search]") {
    SearchConfig cfg;
    cfg.d = 4;
    cfg.symmetry = ModMatrix(8, 1, 0, 0, 1);  // det +1: not anti-unitary
    CHECK_THROWS_AS(search(cfg), std::invalid_argument);
}

TEST_CASE("fft objective converges to the same bound", "[search]") {
    SearchConfig cfg;
    cfg.d = 4;
    cfg.master_seed = 42;
    cfg.max_restarts = 50;
    cfg.use_fft = true;
    const auto res = search(cfg);
    REQUIRE(res.converged);
    CHECK(std::abs(res.achieved_potential - 0.4) < 1e-12);
}
