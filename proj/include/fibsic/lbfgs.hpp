// SPDX-License-Identifier: Apache-2.0
//
// Limited-memory BFGS with a strong-Wolfe line search. Gradient-only,
// deterministic, and tuned to polish smooth objectives down to the
// floating-point floor (the line search failing cleanly is the normal
// terminal state near a minimum).

#pragma once

#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <vector>

namespace fibsic {

struct LbfgsOptions {
    int memory = 10;
    int max_iterations = 10000;
    double c1 = 1e-4;           // sufficient decrease
    double c2 = 0.9;            // curvature
    double grad_tol = 1e-13;    // stop when ||g||_inf falls below
    int max_line_search = 60;   // evaluations per line search
};

struct LbfgsResult {
    std::vector<double> x;
    double f = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> grad;
    int iterations = 0;
    long evaluations = 0;
    bool line_search_failed = false;  // reached the numerical floor
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<long double>(a[i]) * b[i];
    return static_cast<double>(acc);
}

inline double inf_norm(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace detail

/// Minimizes fn(x, grad) -> f starting from x0. fn must fill grad.
template <typename Fn>
LbfgsResult lbfgs_minimize(Fn&& fn, std::vector<double> x0, const LbfgsOptions& opt = {}) {
    const std::size_t n = x0.size();
    LbfgsResult res;
    res.x = std::move(x0);
    res.grad.assign(n, 0.0);
    res.f = fn(res.x, res.grad);
    res.evaluations = 1;

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    std::vector<double> p(n), x_trial(n), g_trial(n);

    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        res.iterations = iter;
        if (detail::inf_norm(res.grad) <= opt.grad_tol) return res;

        // two-loop recursion
        p = res.grad;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            alpha[i] = rho_hist[i] * detail::dot(s_hist[i], p);
            for (std::size_t j = 0; j < n; ++j) p[j] -= alpha[i] * y_hist[i][j];
        }
        if (!s_hist.empty()) {
            const double gamma = detail::dot(s_hist.back(), y_hist.back()) /
                                 detail::dot(y_hist.back(), y_hist.back());
            for (auto& v : p) v *= gamma;
        }
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double beta = rho_hist[i] * detail::dot(y_hist[i], p);
            for (std::size_t j = 0; j < n; ++j) p[j] += s_hist[i][j] * (alpha[i] - beta);
        }
        for (auto& v : p) v = -v;

        double dphi0 = detail::dot(res.grad, p);
        if (!(dphi0 < 0.0)) {  // not a descent direction: restart from steepest descent
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for (std::size_t j = 0; j < n; ++j) p[j] = -res.grad[j];
            dphi0 = detail::dot(res.grad, p);
            if (!(dphi0 < 0.0)) return res;  // gradient vanished
        }

        // strong Wolfe line search (bracket + zoom, bisection-safeguarded)
        const double f0 = res.f;
        auto eval = [&](double a) {
            for (std::size_t j = 0; j < n; ++j) x_trial[j] = res.x[j] + a * p[j];
            const double f = fn(x_trial, g_trial);
            ++res.evaluations;
            return f;
        };
        auto wolfe1 = [&](double a, double f) { return f <= f0 + opt.c1 * a * dphi0; };

        double a_prev = 0.0, f_prev = f0;
        double a = 1.0;
        double a_accept = -1.0, f_accept = 0.0;
        bool have_bracket = false;
        double lo = 0.0, f_lo = f0, hi = 0.0;
        int evals = 0;

        while (evals < opt.max_line_search) {
            const double f = eval(a);
            ++evals;
            const bool finite = std::isfinite(f);
            if (!finite || !wolfe1(a, f) || (evals > 1 && f >= f_prev)) {
                lo = a_prev;
                f_lo = f_prev;
                hi = a;
                have_bracket = true;
                break;
            }
            const double dphi = detail::dot(g_trial, p);
            if (std::abs(dphi) <= -opt.c2 * dphi0) {
                a_accept = a;
                f_accept = f;
                break;
            }
            if (dphi >= 0.0) {
                lo = a;
                f_lo = f;
                hi = a_prev;
                have_bracket = true;
                break;
            }
            a_prev = a;
            f_prev = f;
            a *= 2.0;
            if (a > 1e12) break;
        }

        if (a_accept < 0.0 && have_bracket) {
            while (evals < opt.max_line_search) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;  // interval exhausted
                const double f = eval(mid);
                ++evals;
                if (!std::isfinite(f) || !wolfe1(mid, f) || f >= f_lo) {
                    hi = mid;
                } else {
                    const double dphi = detail::dot(g_trial, p);
                    if (std::abs(dphi) <= -opt.c2 * dphi0) {
                        a_accept = mid;
                        f_accept = f;
                        break;
                    }
                    if (dphi * (hi - lo) >= 0.0) hi = lo;
                    lo = mid;
                    f_lo = f;
                }
            }
            // Wolfe unattainable at this scale: take the best decrease found
            if (a_accept < 0.0 && lo > 0.0 && f_lo < f0) {
                a_accept = lo;
                f_accept = eval(lo);
            }
        }

        if (a_accept < 0.0 || !(f_accept < f0)) {
            res.line_search_failed = true;
            return res;  // numerical floor
        }

        // accept the step; g_trial currently holds grad at a_accept
        std::vector<double> s(n), yv(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double xn = res.x[j] + a_accept * p[j];
            s[j] = xn - res.x[j];
            res.x[j] = xn;
        }
        for (std::size_t j = 0; j < n; ++j) yv[j] = g_trial[j] - res.grad[j];
        res.f = f_accept;
        res.grad = g_trial;

        const double sy = detail::dot(s, yv);
        if (sy > 1e-13 * std::sqrt(std::max(detail::dot(s, s) * detail::dot(yv, yv), 0.0))) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(yv));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opt.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
    }
    res.iterations = opt.max_iterations;
    return res;
}

}  // namespace fibsic
