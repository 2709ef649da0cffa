// SPDX-License-Identifier: Apache-2.0
//
// The Weyl-Heisenberg group in dimension d: shift and clock generators,
// displacement operators with Appleby's phase convention, Clifford
// unitaries for SL(2) symmetry matrices, and the anti-unitary action.

#pragma once

#include <fibsic/linalg.hpp>
#include <fibsic/modmat.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fibsic {

/// Modulus of the symmetry matrices attached to dimension d.
inline long long clifford_modulus(long long d) { return d % 2 == 0 ? 2 * d : d; }

/// tau = -exp(i pi / d), the displacement phase base; tau^(2d) = 1.
inline cplx tau_power(int d, long long e) {
    const long long period = 2LL * d;
    const long long em = ((e % period) + period) % period;
    // tau^e = exp(i pi (d+1) e / d); reduce the exponent of the primitive root
    const long long k = (em * ((d + 1) % period)) % period;
    return std::polar(1.0, std::numbers::pi * static_cast<double>(k) / d);
}

struct WHGenerators {
    CMatrix X;  // cyclic shift
    CMatrix Z;  // clock
};

inline WHGenerators shift_and_clock(int d) {
    if (d < 2) throw std::invalid_argument("shift_and_clock: d must be >= 2");
    WHGenerators g{CMatrix(d), CMatrix(d)};
    for (int i = 0; i < d; ++i) {
        g.X((i + 1) % d, i) = 1.0;
        g.Z(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * i / d);
    }
    return g;
}

struct DisplacementIndex {
    int a = 0;
    int b = 0;
    DisplacementIndex() = default;
    DisplacementIndex(int ai, int bi, int d) : a(((ai % d) + d) % d), b(((bi % d) + d) % d) {}
};

/// D_(a,b) = tau^(ab) X^a Z^b.
inline CMatrix displacement(const DisplacementIndex& idx, int d) {
    if (d < 2) throw std::invalid_argument("displacement: d must be >= 2");
    CMatrix m(d);
    const cplx phase = tau_power(d, static_cast<long long>(idx.a) * idx.b);
    for (int j = 0; j < d; ++j)
        m((j + idx.a) % d, j) = phase * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) * idx.b / d);
    return m;
}

/// D_(a,b) v without materializing the matrix.
inline CVector displacement_apply(int a, int b, const CVector& v) {
    const int d = static_cast<int>(v.size());
    a = ((a % d) + d) % d;
    b = ((b % d) + d) % d;
    CVector r(v.size());
    const cplx phase = tau_power(d, static_cast<long long>(a) * b);
    for (int i = 0; i < d; ++i) {
        const int j = (i - a + d) % d;
        r[static_cast<std::size_t>(i)] =
            phase * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) * b / d) * v[static_cast<std::size_t>(j)];
    }
    return r;
}

/// Lifts a symmetry matrix given mod d into Z_2d for even d, adjusting
/// entries by +d (16 candidate patterns, first hit) until det = +-1 mod 2d
/// matches det mod d. Odd d passes through unchanged.
inline ModMatrix lift_to_clifford_modulus(const ModMatrix& f, long long d) {
    const long long dbar = clifford_modulus(d);
    if (f.m == dbar) return f;
    if (f.m != d) throw std::invalid_argument("lift_to_clifford_modulus: matrix modulus is neither d nor 2d");
    const long long dd = f.det();
    long long target;
    if (dd == 1 % d)
        target = 1;
    else if (dd == d - 1)
        target = dbar - 1;
    else
        throw std::invalid_argument("lift_to_clifford_modulus: det must be +-1 mod d");
    for (int mask = 0; mask < 16; ++mask) {
        ModMatrix cand(dbar, f.e[0] + ((mask >> 0) & 1) * d, f.e[1] + ((mask >> 1) & 1) * d,
                       f.e[2] + ((mask >> 2) & 1) * d, f.e[3] + ((mask >> 3) & 1) * d);
        if (cand.det() == target) return cand;
    }
    throw std::runtime_error("lift_to_clifford_modulus: no lift found");
}

namespace detail {

inline long long inverse_mod(long long x, long long m) {
    long long t = 0, nt = 1, r = m, nr = posmod(x, m);
    while (nr != 0) {
        const long long q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (r != 1) throw std::invalid_argument("inverse_mod: not invertible");
    return posmod(t, m);
}

/// Appleby's unitary for F = [[al,be],[ga,de]] with invertible be:
/// U = d^{-1/2} sum_{r,s} tau^{be^{-1}(al s^2 - 2 r s + de r^2)} |r><s|.
inline CMatrix gauss_sum_unitary(const ModMatrix& f, int d) {
    const long long m = f.m;
    const long long bi = inverse_mod(f.e[1], m);
    CMatrix u(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) {
            const long long quad =
                posmod(mulmod(f.e[0], mulmod(s, s, m), m) - mulmod(2, mulmod(r, s, m), m) +
                           mulmod(f.e[3], mulmod(r, r, m), m),
                       m);
            const long long e = mulmod(bi, quad, m);
            // the exponent lives mod 2d; for odd d the matrix is mod d and
            // tau^d = 1, so the reduced value is still correct
            u(r, s) = scale * tau_power(d, e);
        }
    return u;
}

}  // namespace detail

/// Unitary U_F with U_F D_(a,b) U_F^† proportional to D_(F(a,b)) for every
/// (a,b). F must have det = 1 over Z_dbar (matrices given mod d are lifted).
/// When the upper-right entry is not invertible, U_F is synthesized as a
/// product of two Gauss-sum unitaries.
inline CMatrix clifford_unitary(const ModMatrix& f_in, int d) {
    const ModMatrix f = lift_to_clifford_modulus(f_in, d);
    const long long m = f.m;
    if (f.det() != 1 % m) throw std::invalid_argument("clifford_unitary: det must be 1 mod dbar");
    if (std::gcd(f.e[1], m) == 1) return detail::gauss_sum_unitary(f, d);
    // F = F1 F2 with F2 = [[p,1],[-1,0]] and F1 = F F2^{-1}; pick the first p
    // that makes the upper-right entry of F1 invertible
    const long long al = f.e[0], be = f.e[1], ga = f.e[2], de = f.e[3];
    for (long long p = 0; p < m; ++p) {
        if (std::gcd(detail::posmod(be * p - al, m), m) != 1) continue;
        const ModMatrix f2(m, p, 1, -1, 0);
        const ModMatrix f1(m, be, be * p - al, de, de * p - ga);
        return mat_mul(detail::gauss_sum_unitary(f1, d), detail::gauss_sum_unitary(f2, d));
    }
    throw std::runtime_error("clifford_unitary: factorization failed");
}

/// Unitary part of the anti-unitary for det = -1 matrices: F = J F' with
/// J = diag(1,-1); the anti-unitary action is v -> conj(U_{F'} v).
inline CMatrix antiunitary_unitary_part(const ModMatrix& f_in, int d) {
    const ModMatrix f = lift_to_clifford_modulus(f_in, d);
    const long long m = f.m;
    if (f.det() != m - 1) throw std::invalid_argument("antiunitary: det must be -1 mod dbar");
    const ModMatrix fprime(m, f.e[0], f.e[1], -f.e[2], -f.e[3]);  // J * F
    return clifford_unitary(fprime, d);
}

inline CVector antiunitary_apply(const ModMatrix& f, const CVector& v) {
    const int d = static_cast<int>(v.size());
    const CMatrix u = antiunitary_unitary_part(f, d);
    return conjugate(mat_apply(u, v));
}

/// All d^2 orbit vectors D_(a,b) psi in row-major (a,b) order.
inline std::vector<CVector> weyl_orbit(const CVector& fiducial) {
    const int d = static_cast<int>(fiducial.size());
    if (std::abs(norm(fiducial) - 1.0) > 1e-10)
        throw std::invalid_argument("weyl_orbit: fiducial must be unit norm");
    std::vector<CVector> orbit;
    orbit.reserve(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) orbit.push_back(displacement_apply(a, b, fiducial));
    return orbit;
}

/// Phase-stripped covariance defect max ||U D U^† - e^{i t} D_{F(a,b)}||
/// over the given displacement indices (F acts mod d, column convention).
inline double covariance_error(const CMatrix& u, const ModMatrix& f, int d,
                               const std::vector<DisplacementIndex>& indices) {
    const CMatrix ud = adjoint(u);
    double worst = 0.0;
    for (const auto& idx : indices) {
        const CMatrix lhs = mat_mul(mat_mul(u, displacement(idx, d)), ud);
        const long long a2 = detail::posmod(f.e[0] * idx.a + f.e[1] * idx.b, d);
        const long long b2 = detail::posmod(f.e[2] * idx.a + f.e[3] * idx.b, d);
        const CMatrix rhs = displacement(DisplacementIndex(static_cast<int>(a2), static_cast<int>(b2), d), d);
        cplx tr = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) tr += std::conj(rhs(i, j)) * lhs(i, j);
        const cplx phase = std::abs(tr) > 1e-12 ? tr / std::abs(tr) : cplx(1.0);
        CMatrix scaled = rhs;
        for (auto& z : scaled.a) z *= phase;
        worst = std::max(worst, max_abs(mat_sub(lhs, scaled)));
    }
    return worst;
}

}  // namespace fibsic
