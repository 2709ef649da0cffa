// SPDX-License-Identifier: Apache-2.0
//
// Symmetry-restricted fiducial search: Haar-random starts, symmetrization
// into the con-eigenspace, and L-BFGS polishing of the frame potential,
// repeated over independent seeded restarts.

#pragma once

#include <fibsic/coneigen.hpp>
#include <fibsic/frame_potential.hpp>
#include <fibsic/lbfgs.hpp>
#include <fibsic/modmat.hpp>
#include <fibsic/wh_group.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <thread>
#include <vector>

namespace fibsic {

struct SearchConfig {
    int d = 4;
    std::optional<ModMatrix> symmetry;  // det -1 candidate; default F_f over Z_dbar
    int max_restarts = 1000;
    int max_iterations = 10000;   // per restart
    double convergence_gap = 1e-13;
    std::uint64_t master_seed = 0;
    int jobs = 0;                 // 0 = hardware concurrency
    bool use_fft = false;
    int resample_limit = 100;     // degenerate symmetrizations tolerated per restart
};

struct SearchResult {
    CVector fiducial;
    double achieved_potential = std::numeric_limits<double>::infinity();
    int restarts_used = 0;
    bool converged = false;
    int winning_restart = -1;
    int coneigen_order = 0;      // n of the search symmetry
    int coneigen_rank = 0;       // complex dimension of the con-eigenspace
    double coneigen_residual = std::numeric_limits<double>::infinity();
    long long total_iterations = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for (restart, attempt), a pure function of the master seed.
inline std::uint64_t derived_seed(std::uint64_t master, int restart, int attempt) {
    return splitmix64(splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(restart))) +
                      static_cast<std::uint64_t>(attempt));
}

}  // namespace detail

/// Unit vector of d i.i.d. standard complex Gaussians (Haar direction),
/// deterministic per seed.
inline CVector haar_random_vector(int d, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("haar_random_vector: d must be >= 1");
    std::mt19937_64 rng(seed);
    auto uniform = [&rng] {  // strictly inside (0,1)
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    };
    CVector v(static_cast<std::size_t>(d));
    for (auto& z : v) {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        z = cplx(r * std::cos(t), r * std::sin(t));
    }
    normalize(v);
    return v;
}

namespace detail {

struct RestartOutcome {
    bool valid = false;
    bool converged = false;
    double potential = std::numeric_limits<double>::infinity();
    CVector fiducial;
    long long iterations = 0;
};

inline RestartOutcome run_restart(const SymmetricObjective& obj, const SearchConfig& cfg, int index) {
    RestartOutcome out;
    LbfgsOptions lopt;
    lopt.max_iterations = cfg.max_iterations;
    const double bound = welch_bound(cfg.d);
    for (int attempt = 0; attempt < cfg.resample_limit; ++attempt) {
        const CVector phi = haar_random_vector(cfg.d, derived_seed(cfg.master_seed, index, attempt));
        const std::vector<double> x0 = SymmetricObjective::to_raw(phi);
        try {
            auto fn = [&obj](const std::vector<double>& x, std::vector<double>& g) {
                return obj.value_and_grad(x, g);
            };
            const LbfgsResult res = lbfgs_minimize(fn, x0, lopt);
            out.valid = true;
            out.fiducial = obj.symmetrized_point(res.x);
            out.potential = frame_potential(out.fiducial);
            out.iterations = res.iterations;
            out.converged = out.potential - bound <= cfg.convergence_gap;
            return out;
        } catch (const DegenerateSymmetrization&) {
            continue;  // fresh draw
        }
    }
    return out;  // counted as a failed restart
}

}  // namespace detail

/// Best result over seeded restarts. Restarts are scheduled in waves of
/// `jobs`; once some restart converges, every restart with a smaller index
/// has already completed and results with larger indices are discarded, so
/// the selected fiducial is independent of the thread count. Ties on the
/// achieved potential go to the earlier restart index.
inline SearchResult search(const SearchConfig& cfg) {
    if (cfg.d < 2) throw std::invalid_argument("search: d must be >= 2");
    const long long dbar = clifford_modulus(cfg.d);
    ModMatrix sym = cfg.symmetry ? lift_to_clifford_modulus(*cfg.symmetry, cfg.d)
                                 : fibonacci_matrix(dbar);
    if (sym.det() != dbar - 1)
        throw std::invalid_argument("search: symmetry matrix must have det -1 mod dbar");

    const CMatrix u = antiunitary_unitary_part(sym, cfg.d);
    const ConEigenData ce = coneigen_projector(u);
    if (ce.rank < 1) throw std::runtime_error("search: symmetry has no con-eigenvectors");
    const SymmetricObjective obj(ce, cfg.use_fft);

    const int jobs = cfg.jobs > 0 ? cfg.jobs
                                  : std::max(1u, std::thread::hardware_concurrency());
    std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(cfg.max_restarts));
    int stop_index = cfg.max_restarts;  // first converged restart, once known

    for (int wave = 0; wave < cfg.max_restarts; wave += jobs) {
        const int wave_end = std::min(cfg.max_restarts, wave + jobs);
        if (wave_end - wave == 1) {
            outcomes[static_cast<std::size_t>(wave)] = detail::run_restart(obj, cfg, wave);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(wave_end - wave));
            for (int i = wave; i < wave_end; ++i)
                pool.emplace_back([&outcomes, &obj, &cfg, i] {
                    outcomes[static_cast<std::size_t>(i)] = detail::run_restart(obj, cfg, i);
                });
            for (auto& t : pool) t.join();
        }
        for (int i = wave; i < wave_end; ++i)
            if (outcomes[static_cast<std::size_t>(i)].converged) {
                stop_index = std::min(stop_index, i);
                break;
            }
        if (stop_index < wave_end) break;
    }

    SearchResult result;
    result.coneigen_order = ce.n;
    result.coneigen_rank = ce.rank;
    const int considered = std::min(cfg.max_restarts, stop_index + 1);
    result.restarts_used = considered;
    for (int i = 0; i < considered; ++i) {
        const auto& o = outcomes[static_cast<std::size_t>(i)];
        if (!o.valid) continue;
        result.total_iterations += o.iterations;
        if (o.potential < result.achieved_potential) {
            result.achieved_potential = o.potential;
            result.fiducial = o.fiducial;
            result.winning_restart = i;
            result.converged = o.converged;
        }
    }
    if (!result.fiducial.empty())
        result.coneigen_residual = coneigen_residual(result.fiducial, ce.U);
    return result;
}

}  // namespace fibsic
