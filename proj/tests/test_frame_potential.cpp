// SPDX-License-Identifier: Apache-2.0

#include <fibsic/frame_potential.hpp>
#include <fibsic/search.hpp>
#include <fibsic/verify.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace fibsic;

TEST_CASE("basis vector saturates at 1", "[fp]") {
    for (int d : {2, 3, 5, 8}) {
        CVector e0(static_cast<std::size_t>(d), cplx(0.0));
        e0[0] = 1.0;
        CHECK(std::abs(frame_potential(e0) - 1.0) < 1e-14);
    }
}

TEST_CASE("d = 1 saturates the bound", "[fp]") {
    const CVector v{std::polar(1.0, 0.7)};
    CHECK(std::abs(frame_potential(v) - 1.0) < 1e-15);
    CHECK(welch_bound(1) == 1.0);
}

TEST_CASE("non-normalized input is rejected", "[fp]") {
    CVector v{cplx(1, 0), cplx(1, 0)};
    CHECK_THROWS_AS(frame_potential(v), std::invalid_argument);
    CHECK_THROWS_AS(frame_potential_fft(v), std::invalid_argument);
}

TEST_CASE("welch bound holds on random vectors", "[fp]") {
    for (int d : {2, 4, 5, 8}) {
        for (std::uint64_t s = 0; s < 50; ++s) {
            const CVector v = haar_random_vector(d, 100 * static_cast<std::uint64_t>(d) + s);
            CHECK(frame_potential(v) >= welch_bound(d) - 1e-12);
        }
    }
}

TEST_CASE("direct sum equals the displacement-overlap form", "[fp]") {
    // P = (1/d) sum_{a,b} |<v|D_(a,b) v>|^4
    for (int d : {2, 3, 4, 5, 8}) {
        const CVector v = haar_random_vector(d, 7 + static_cast<std::uint64_t>(d));
        long double acc = 0.0L;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const double m2 = std::norm(inner(v, displacement_apply(a, b, v)));
                acc += static_cast<long double>(m2) * m2;
            }
        const double via_overlaps = static_cast<double>(acc) / d;
        CHECK(std::abs(frame_potential(v) - via_overlaps) < 1e-12);
    }
}

TEST_CASE("fft path agrees with the direct sum", "[fp]") {
    for (int d : {2, 3, 4, 5, 7, 8, 12, 16, 19, 31, 48}) {
        const CVector v = haar_random_vector(d, 40 + static_cast<std::uint64_t>(d));
        CHECK(std::abs(frame_potential_fft(v) - frame_potential(v)) < 1e-11);
    }
}

namespace {
SymmetricObjective make_objective(int d, bool use_fft = false) {
    const CMatrix u = antiunitary_unitary_part(fibonacci_matrix(clifford_modulus(d)), d);
    return SymmetricObjective(coneigen_projector(u), use_fft);
}

double fd_directional(const SymmetricObjective& obj, const std::vector<double>& x,
                      const std::vector<double>& dir, double h) {
    std::vector<double> xp = x, xm = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xp[i] += h * dir[i];
        xm[i] -= h * dir[i];
    }
    return (obj.value(xp) - obj.value(xm)) / (2.0 * h);
}
}  // namespace

TEST_CASE("analytic gradient matches central finite differences", "[fp]") {
    std::mt19937_64 rng(2024);
    for (int d : {4, 8}) {
        const auto obj = make_objective(d);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> x(2 * static_cast<std::size_t>(d));
            for (auto& v : x) v = std::uniform_real_distribution<>(-1, 1)(rng);
            std::vector<double> g;
            obj.value_and_grad(x, g);
            const double h = 1e-6;
            std::vector<double> gfd(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                std::vector<double> xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                gfd[i] = (obj.value(xp) - obj.value(xm)) / (2.0 * h);
            }
            long double num = 0.0L, den = 0.0L;
            for (std::size_t i = 0; i < x.size(); ++i) {
                num += (g[i] - gfd[i]) * (g[i] - gfd[i]);
                den += gfd[i] * gfd[i];
            }
            const double rel = std::sqrt(static_cast<double>(num)) /
                               std::max(1.0, std::sqrt(static_cast<double>(den)));
            CHECK(rel <= 1e-6);
        }
    }
}

TEST_CASE("directional derivative inside the con-eigenspace", "[fp]") {
    const int d = 4;
    const auto obj = make_objective(d);
    // start at a symmetric point and perturb along another symmetric direction
    const auto ce = obj.coneigen();
    const auto base = symmetrize(haar_random_vector(d, 5), ce);
    const auto disp = symmetrize(haar_random_vector(d, 6), ce);
    REQUIRE(base.has_value());
    REQUIRE(disp.has_value());
    const std::vector<double> x = SymmetricObjective::to_raw(*base);
    const std::vector<double> dir = SymmetricObjective::to_raw(*disp);
    std::vector<double> g;
    obj.value_and_grad(x, g);
    long double analytic = 0.0L;
    for (std::size_t i = 0; i < g.size(); ++i) analytic += g[i] * dir[i];
    const double fd = fd_directional(obj, x, dir, 1e-6);
    CHECK(std::abs(static_cast<double>(analytic) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
}

TEST_CASE("objective value with the fft path", "[fp]") {
    const int d = 8;
    const auto direct = make_objective(d, false);
    const auto fft = make_objective(d, true);
    const std::vector<double> x = SymmetricObjective::to_raw(haar_random_vector(d, 9));
    CHECK(std::abs(direct.value(x) - fft.value(x)) < 1e-11);
    std::vector<double> g1, g2;
    const double f1 = direct.value_and_grad(x, g1);
    const double f2 = fft.value_and_grad(x, g2);
    CHECK(std::abs(f1 - f2) < 1e-11);
    for (std::size_t i = 0; i < g1.size(); ++i) CHECK(std::abs(g1[i] - g2[i]) < 1e-12);
}

TEST_CASE("degenerate symmetrization raises the resample signal", "[fp]") {
    // rank-1 con-eigenspace at d = 3: a purely non-symmetric phi can zero out
    ConEigenData trivial;
    trivial.U = CMatrix::identity(2);
    trivial.Q = CMatrix::identity(2);
    trivial.n = 1;
    trivial.rank = 2;
    const SymmetricObjective obj(trivial);
    const std::vector<double> x{0.0, 0.0, 1.0, -0.5};  // purely imaginary phi
    CHECK_THROWS_AS(obj.value(x), DegenerateSymmetrization);
}
