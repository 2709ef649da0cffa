// SPDX-License-Identifier: Apache-2.0

#include <fibsic/lbfgs.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace fibsic;

TEST_CASE("convex quadratic", "[lbfgs]") {
    // f = sum c_i (x_i - i)^2
    auto fn = [](const std::vector<double>& x, std::vector<double>& g) {
        double f = 0.0;
        g.assign(x.size(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double c = 1.0 + static_cast<double>(i);
            const double dx = x[i] - static_cast<double>(i);
            f += c * dx * dx;
            g[i] = 2.0 * c * dx;
        }
        return f;
    };
    const auto res = lbfgs_minimize(fn, std::vector<double>(6, 0.0));
    CHECK(res.f < 1e-18);
    for (std::size_t i = 0; i < res.x.size(); ++i)
        CHECK(std::abs(res.x[i] - static_cast<double>(i)) < 1e-9);
}

TEST_CASE("rosenbrock", "[lbfgs]") {
    auto fn = [](const std::vector<double>& x, std::vector<double>& g) {
        const double a = x[0], b = x[1];
        g.assign(2, 0.0);
        const double f = 100.0 * (b - a * a) * (b - a * a) + (1 - a) * (1 - a);
        g[0] = -400.0 * a * (b - a * a) - 2.0 * (1 - a);
        g[1] = 200.0 * (b - a * a);
        return f;
    };
    const auto res = lbfgs_minimize(fn, {-1.2, 1.0});
    CHECK(res.f < 1e-16);
    CHECK(std::abs(res.x[0] - 1.0) < 1e-7);
    CHECK(std::abs(res.x[1] - 1.0) < 1e-7);
}

TEST_CASE("iteration cap is honored", "[lbfgs]") {
    auto fn = [](const std::vector<double>& x, std::vector<double>& g) {
        g.assign(1, 2.0 * x[0]);
        return x[0] * x[0];
    };
    LbfgsOptions opt;
    opt.max_iterations = 1;
    const auto res = lbfgs_minimize(fn, {1000.0}, opt);
    CHECK(res.iterations <= 1);
}

TEST_CASE("deterministic trajectories", "[lbfgs]") {
    auto fn = [](const std::vector<double>& x, std::vector<double>& g) {
        double f = 0.0;
        g.assign(x.size(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            f += std::cos(x[i]) + 0.1 * x[i] * x[i];
            g[i] = -std::sin(x[i]) + 0.2 * x[i];
        }
        return f;
    };
    const auto r1 = lbfgs_minimize(fn, {1.0, -2.0, 0.5});
    const auto r2 = lbfgs_minimize(fn, {1.0, -2.0, 0.5});
    CHECK(r1.f == r2.f);
    CHECK(r1.x == r2.x);
    CHECK(r1.evaluations == r2.evaluations);
}
