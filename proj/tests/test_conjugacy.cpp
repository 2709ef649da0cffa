// SPDX-License-Identifier: Apache-2.0

#include <fibsic/conjugacy.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

using namespace fibsic;

TEST_CASE("recorded conjugation cases all reproduce the Fibonacci matrix", "[conj]") {
    const auto cases = recorded_conjugation_cases();
    REQUIRE(cases.size() == 7);
    for (const auto& c : cases) {
        INFO(c.label);
        CHECK(verify_conjugation_case(c));
    }
}

TEST_CASE("recorded intermediate powers match", "[conj]") {
    CHECK(mat_pow(ModMatrix(8, 2, 1, 7, 3), 7) == ModMatrix(8, 2, 5, 3, 7));
    CHECK(mat_pow(ModMatrix(16, 6, 11, 5, 1), 11) == ModMatrix(16, 7, 3, 13, 10));
    CHECK(mat_pow(ModMatrix(19, 3, 12, 7, 15), 17) == ModMatrix(19, 4, 12, 7, 16));
    CHECK(mat_pow(ModMatrix(96, 4, 37, 25, 63), 41) == ModMatrix(96, 61, 25, 61, 36));

    // the d = 4 generator is itself a recorded product of two matrices
    CHECK(mat_mul(ModMatrix(8, 1, 2, 6, 3), ModMatrix(8, 0, 3, 5, 3)) == ModMatrix(8, 2, 1, 7, 3));
}

TEST_CASE("a mutated case is detected", "[conj]") {
    auto c = recorded_conjugation_cases().front();
    c.conjugator = ModMatrix(c.conjugator.m, c.conjugator.e[0] + 1, c.conjugator.e[1],
                             c.conjugator.e[2], c.conjugator.e[3]);
    CHECK_FALSE(verify_conjugation_case(c));
}

TEST_CASE("solve_conjugator finds witnesses for the recorded cases", "[conj]") {
    for (const auto& c : recorded_conjugation_cases()) {
        INFO(c.label);
        const ModMatrix f1 = mat_pow(c.base, c.power);
        const ModMatrix f2 = fibonacci_matrix(c.base.m);
        const auto g = solve_conjugator(f1, f2);
        REQUIRE(g.has_value());
        CHECK(mat_mul(*g, f1) == mat_mul(f2, *g));
        CHECK(std::gcd(g->det(), g->m) == 1);
    }
}

TEST_CASE("solve_conjugator trivial and negative cases", "[conj]") {
    const auto g = solve_conjugator(ModMatrix::identity(8), ModMatrix::identity(8));
    REQUIRE(g.has_value());
    CHECK(std::gcd(g->det(), 8LL) == 1);

    // F_f^8 mod 48 is order three with trace -1 but is not conjugate to F_z
    const ModMatrix f8 = mat_pow(fibonacci_matrix(48), 8);
    CHECK_FALSE(solve_conjugator(f8, zauner_matrix(48)).has_value());

    CHECK_THROWS_AS(solve_conjugator(ModMatrix::identity(8), ModMatrix::identity(16)),
                    std::invalid_argument);
}

TEST_CASE("solve_conjugator on random conjugate pairs", "[conj]") {
    std::mt19937_64 rng(37);
    int solved = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const long long m = 2 + static_cast<long long>(rng() % 120);
        const ModMatrix f1(m, static_cast<long long>(rng() % m), static_cast<long long>(rng() % m),
                           static_cast<long long>(rng() % m), static_cast<long long>(rng() % m));
        ModMatrix p(m, static_cast<long long>(rng() % m), static_cast<long long>(rng() % m),
                    static_cast<long long>(rng() % m), static_cast<long long>(rng() % m));
        if (std::gcd(p.det(), m) != 1) continue;
        const ModMatrix f2 = mat_mul(mat_mul(p, f1), *mat_inverse(p));
        const auto g = solve_conjugator(f1, f2);
        REQUIRE(g.has_value());
        CHECK(mat_mul(*g, f1) == mat_mul(f2, *g));
        CHECK(std::gcd(g->det(), m) == 1);
        ++solved;
    }
    CHECK(solved > 20);
}

TEST_CASE("order-three classification", "[conj]") {
    // F_f^2 mod 4 is the k = 1 canonical order-three element
    const auto c1 = classify_order3(mat_pow(fibonacci_matrix(4), 2), 4);
    CHECK(c1.cls == Order3Class::zauner);
    REQUIRE(c1.witness.has_value());

    // k = 4 lands in the exceptional class
    const ModMatrix f8 = mat_pow(fibonacci_matrix(48), 8);
    const auto c4 = classify_order3(f8, 48);
    CHECK(c4.cls == Order3Class::appleby_Fa);
    REQUIRE(c4.witness.has_value());
    const auto fa = canonical_matrices(48).Fa;
    CHECK(mat_mul(*c4.witness, f8) == mat_mul(*fa, *c4.witness));

    CHECK(classify_order3(ModMatrix::identity(5), 5).cls == Order3Class::not_order3);
    CHECK(classify_order3(fibonacci_matrix(4), 4).cls == Order3Class::not_order3);
    // order three but trace 4 rather than -1 (diag(2,2) over Z_7)
    CHECK(classify_order3(ModMatrix(7, 2, 0, 0, 2), 7).cls == Order3Class::not_order3);
    CHECK_THROWS_AS(classify_order3(ModMatrix::identity(5), 6), std::invalid_argument);
}

TEST_CASE("fibonacci symmetry analysis across k", "[conj]") {
    for (long k = 1; k <= 8; ++k) {
        const auto a = analyze_fibonacci_symmetry(k);
        INFO("k = " << k << " d = " << a.d);
        REQUIRE(a.order.has_value());
        CHECK(*a.order == 6 * k);
        CHECK(a.det == a.d - 1);
        CHECK(a.trace_at_2k == a.d - 1);
        if (k % 2 == 0) {
            REQUIRE(a.scalar_at_3k.has_value());
            CHECK(*a.scalar_at_3k != 1);
        } else {
            CHECK_FALSE(a.scalar_at_3k.has_value());
        }
        CHECK(a.order3.cls == (k % 4 == 0 ? Order3Class::appleby_Fa : Order3Class::zauner));
        REQUIRE(a.order3.witness.has_value());
    }
    CHECK_THROWS_AS(analyze_fibonacci_symmetry(0), std::invalid_argument);
}

TEST_CASE("analysis propagates an undersized cap", "[conj]") {
    const auto a = analyze_fibonacci_symmetry(2, 5);
    CHECK_FALSE(a.order.has_value());
}
