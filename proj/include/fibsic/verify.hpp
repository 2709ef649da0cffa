// SPDX-License-Identifier: Apache-2.0
//
// Certification of candidate fiducials: overlap table, Gram condition,
// overlap phases, triple products, and probe-based symmetry detection.

#pragma once

#include <fibsic/coneigen.hpp>
#include <fibsic/linalg.hpp>
#include <fibsic/modmat.hpp>
#include <fibsic/wh_group.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace fibsic {

/// All d^2 base overlaps <psi | D_(a,b) psi>, row-major in (a,b).
struct OverlapTable {
    int d = 0;
    std::vector<cplx> v;

    const cplx& at(int a, int b) const {
        a = ((a % d) + d) % d;
        b = ((b % d) + d) % d;
        return v[static_cast<std::size_t>(a) * d + b];
    }
};

inline OverlapTable overlaps(const CVector& fiducial) {
    const int d = static_cast<int>(fiducial.size());
    if (std::abs(norm(fiducial) - 1.0) > 1e-10)
        throw std::invalid_argument("overlaps: fiducial must be unit norm");
    OverlapTable t;
    t.d = d;
    t.v.resize(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            t.v[static_cast<std::size_t>(a) * d + b] = inner(fiducial, displacement_apply(a, b, fiducial));
    return t;
}

struct VerificationReport {
    int d = 0;
    double tolerance = 1e-9;
    double max_gram_deviation = 0.0;       // worst | |o|^2 - 1/(d+1) | off the identity
    double overlap_modulus_deviation = 0.0;  // worst | |o| - 1/sqrt(d+1) |
    bool passed = false;
    std::vector<double> phases;            // arg <psi|D_(a,b) psi>, row-major, (0,0) entry 0
    std::optional<long long> detected_antiunitary_order;
    std::optional<double> max_phase_on_divisor;  // filled when a divisor probe is requested
};

/// Gram certification through the group structure: the d^2-1 base overlaps
/// determine every pairwise tr(Pi_i Pi_j) of the orbit, so only those are
/// examined. Off-diagonal target 1/(d+1).
inline VerificationReport gram_check(const CVector& fiducial, double tolerance = 1e-9) {
    const OverlapTable t = overlaps(fiducial);
    const int d = t.d;
    VerificationReport r;
    r.d = d;
    r.tolerance = tolerance;
    r.phases.assign(static_cast<std::size_t>(d) * d, 0.0);
    const double target = 1.0 / (d + 1);
    const double target_mod = 1.0 / std::sqrt(static_cast<double>(d + 1));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            if (a == 0 && b == 0) continue;
            const cplx o = t.at(a, b);
            r.max_gram_deviation = std::max(r.max_gram_deviation, std::abs(std::norm(o) - target));
            r.overlap_modulus_deviation =
                std::max(r.overlap_modulus_deviation, std::abs(std::abs(o) - target_mod));
            r.phases[static_cast<std::size_t>(a) * d + b] = std::arg(o);
        }
    r.passed = r.max_gram_deviation <= tolerance && r.overlap_modulus_deviation <= tolerance;
    return r;
}

/// Largest |phase| over indices with both a and b divisible by p.
inline double max_phase_on_sublattice(const VerificationReport& r, int p) {
    double worst = 0.0;
    for (int a = 0; a < r.d; a += p)
        for (int b = 0; b < r.d; b += p) {
            if (a == 0 && b == 0) continue;
            worst = std::max(worst, std::abs(r.phases[static_cast<std::size_t>(a) * r.d + b]));
        }
    return worst;
}

/// Triple products t_{0ij} = <psi_0|psi_i><psi_i|psi_j><psi_j|psi_0> over
/// the WH orbit, evaluated lazily from the base overlaps and the
/// displacement phase algebra.
struct TripleProductTensor {
    int d = 0;
    OverlapTable table;

    /// <psi_p | psi_q> for orbit indices p = a*d+b, q likewise.
    cplx pair_overlap(int p, int q) const {
        const long long pa = p / d, pb = p % d, qa = q / d, qb = q % d;
        const long long u = qa - pa, v = qb - pb;
        const long long ar = ((u % d) + d) % d, br = ((v % d) + d) % d;
        // D_p^† D_q = tau^(pa qb - pb qa) D_(u,v), and the integer-index
        // operator D_(u,v) equals tau^(uv - ar br) D_(ar,br)
        const long long e = pa * qb - pb * qa + u * v - ar * br;
        return tau_power(d, e) * table.at(static_cast<int>(ar), static_cast<int>(br));
    }

    cplx at(int i, int j) const {
        return pair_overlap(0, i) * pair_overlap(i, j) * pair_overlap(j, 0);
    }
};

inline TripleProductTensor triple_products(const CVector& fiducial) {
    TripleProductTensor t;
    t.table = overlaps(fiducial);
    t.d = t.table.d;
    return t;
}

struct ProbeOutcome {
    ModMatrix candidate;
    bool accepted = false;
};

struct StabilizerProbeResult {
    std::vector<ProbeOutcome> outcomes;
    std::optional<long long> generated_order;  // subgroup order mod d of accepted candidates
};

namespace detail {

inline std::optional<long long> subgroup_order_mod_d(const std::vector<ModMatrix>& gens, long long d,
                                                     long long cap) {
    if (gens.empty()) return 0;
    using Key = std::array<long long, 4>;
    std::set<Key> seen;
    std::vector<ModMatrix> frontier{ModMatrix::identity(d)};
    seen.insert({1 % d, 0, 0, 1 % d});
    while (!frontier.empty()) {
        std::vector<ModMatrix> next;
        for (const auto& g : frontier)
            for (const auto& h : gens) {
                const ModMatrix p = mat_mul(g, h.reduced(d));
                if (seen.insert({p.e[0], p.e[1], p.e[2], p.e[3]}).second) {
                    next.push_back(p);
                    if (static_cast<long long>(seen.size()) > cap) return std::nullopt;
                }
            }
        frontier = std::move(next);
    }
    return static_cast<long long>(seen.size());
}

}  // namespace detail

/// Tests each candidate symmetry matrix for membership in the fiducial's
/// stabilizer: the (anti-)unitary image of psi must land back on the WH
/// orbit up to phase. Accepted candidates generate a matrix subgroup mod d
/// whose order is reported.
inline StabilizerProbeResult stabilizer_probe(const CVector& fiducial,
                                              const std::vector<ModMatrix>& candidates,
                                              double tol = 1e-8, long long group_cap = 100000) {
    const int d = static_cast<int>(fiducial.size());
    const long long dbar = clifford_modulus(d);
    StabilizerProbeResult result;
    std::vector<ModMatrix> accepted;
    for (const auto& cand : candidates) {
        ProbeOutcome out{cand, false};
        const ModMatrix f = lift_to_clifford_modulus(cand, d);
        CVector mapped;
        if (f.det() == 1 % dbar)
            mapped = mat_apply(clifford_unitary(f, d), fiducial);
        else if (f.det() == dbar - 1)
            mapped = antiunitary_apply(f, fiducial);
        else {
            result.outcomes.push_back(out);
            continue;
        }
        for (int a = 0; a < d && !out.accepted; ++a)
            for (int b = 0; b < d; ++b) {
                const cplx ov = inner(displacement_apply(a, b, fiducial), mapped);
                if (std::abs(std::abs(ov) - 1.0) < tol) {
                    out.accepted = true;
                    break;
                }
            }
        if (out.accepted) accepted.push_back(cand);
        result.outcomes.push_back(out);
    }
    result.generated_order = detail::subgroup_order_mod_d(accepted, d, group_cap);
    return result;
}

}  // namespace fibsic
