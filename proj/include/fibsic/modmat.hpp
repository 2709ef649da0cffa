// SPDX-License-Identifier: Apache-2.0
//
// 2x2 integer matrices with an attached modulus: arithmetic, powers,
// multiplicative order, and the canonical symmetry matrices F_z, F_f, F_a.

#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fibsic {

namespace detail {
inline long long mulmod(long long x, long long y, long long m) {
    return static_cast<long long>((static_cast<__int128>(x) * y) % m);
}
inline long long posmod(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}
}  // namespace detail

/// A 2x2 matrix over Z_m, entries stored row-major and reduced into [0, m).
struct ModMatrix {
    long long m = 2;                      // modulus, >= 2
    std::array<long long, 4> e{0, 0, 0, 0};  // a b / c d

    ModMatrix() = default;
    ModMatrix(long long modulus, long long a, long long b, long long c, long long d) : m(modulus) {
        if (modulus < 2) throw std::invalid_argument("ModMatrix: modulus must be >= 2");
        e = {detail::posmod(a, m), detail::posmod(b, m), detail::posmod(c, m), detail::posmod(d, m)};
    }

    static ModMatrix identity(long long m) { return ModMatrix(m, 1, 0, 0, 1); }

    long long a() const { return e[0]; }
    long long b() const { return e[1]; }
    long long c() const { return e[2]; }
    long long d() const { return e[3]; }

    long long trace() const { return detail::posmod(e[0] + e[3], m); }
    long long det() const {
        return detail::posmod(detail::mulmod(e[0], e[3], m) - detail::mulmod(e[1], e[2], m), m);
    }
    bool is_identity() const { return e[0] == 1 % m && e[1] == 0 && e[2] == 0 && e[3] == 1 % m; }
    bool is_scalar() const { return e[1] == 0 && e[2] == 0 && e[0] == e[3]; }

    /// Same entries reinterpreted modulo a new modulus (entries re-reduced).
    ModMatrix reduced(long long new_m) const { return ModMatrix(new_m, e[0], e[1], e[2], e[3]); }

    bool operator==(const ModMatrix& o) const { return m == o.m && e == o.e; }
    bool operator!=(const ModMatrix& o) const { return !(*this == o); }

    std::string str() const {
        std::ostringstream os;
        os << "[[" << e[0] << "," << e[1] << "],[" << e[2] << "," << e[3] << "]] mod " << m;
        return os.str();
    }
};

inline ModMatrix mat_mul(const ModMatrix& x, const ModMatrix& y) {
    if (x.m != y.m) throw std::invalid_argument("mat_mul: modulus mismatch");
    const long long m = x.m;
    ModMatrix r;
    r.m = m;
    r.e[0] = detail::posmod(detail::mulmod(x.e[0], y.e[0], m) + detail::mulmod(x.e[1], y.e[2], m), m);
    r.e[1] = detail::posmod(detail::mulmod(x.e[0], y.e[1], m) + detail::mulmod(x.e[1], y.e[3], m), m);
    r.e[2] = detail::posmod(detail::mulmod(x.e[2], y.e[0], m) + detail::mulmod(x.e[3], y.e[2], m), m);
    r.e[3] = detail::posmod(detail::mulmod(x.e[2], y.e[1], m) + detail::mulmod(x.e[3], y.e[3], m), m);
    return r;
}

inline ModMatrix mat_pow(const ModMatrix& x, long long n) {
    if (n < 0) throw std::invalid_argument("mat_pow: n must be >= 0");
    ModMatrix result = ModMatrix::identity(x.m);
    ModMatrix base = x;
    while (n > 0) {
        if (n & 1) result = mat_mul(result, base);
        base = mat_mul(base, base);
        n >>= 1;
    }
    return result;
}

/// Least n >= 1 with X^n = I, or nullopt when no n <= cap works.
inline std::optional<long long> mat_order(const ModMatrix& x, long long cap = 10000) {
    if (std::gcd(x.det(), x.m) != 1)
        throw std::invalid_argument("mat_order: determinant not invertible mod m");
    ModMatrix p = x;
    for (long long n = 1; n <= cap; ++n) {
        if (p.is_identity()) return n;
        p = mat_mul(p, x);
    }
    return std::nullopt;
}

/// Inverse via the adjugate; nullopt when det is not invertible mod m.
inline std::optional<ModMatrix> mat_inverse(const ModMatrix& x) {
    const long long m = x.m;
    const long long dt = x.det();
    if (std::gcd(dt, m) != 1) return std::nullopt;
    // extended gcd for det^{-1}
    long long t = 0, new_t = 1, r = m, new_r = dt;
    while (new_r != 0) {
        const long long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    const long long inv = detail::posmod(t, m);
    return ModMatrix(m, detail::mulmod(x.e[3], inv, m), detail::mulmod(-x.e[1] + m, inv, m),
                     detail::mulmod(-x.e[2] + m, inv, m), detail::mulmod(x.e[0], inv, m));
}

/// Fibonacci matrix [[0,1],[1,1]] over Z_m.
inline ModMatrix fibonacci_matrix(long long m) { return ModMatrix(m, 0, 1, 1, 1); }

/// Zauner matrix [[0,-1],[1,-1]] over Z_m.
inline ModMatrix zauner_matrix(long long m) { return ModMatrix(m, 0, -1, 1, -1); }

/// Conjugation in the standard basis, J = diag(1,-1), over Z_m.
inline ModMatrix conjugation_matrix(long long m) { return ModMatrix(m, 1, 0, 0, -1); }

struct CanonicalMatrices {
    ModMatrix Fz;
    ModMatrix Ff;
    std::optional<ModMatrix> Fa;  // present exactly when d = 3 mod 9
};

inline CanonicalMatrices canonical_matrices(long long d) {
    if (d < 2) throw std::invalid_argument("canonical_matrices: d must be >= 2");
    CanonicalMatrices c{zauner_matrix(d), fibonacci_matrix(d), std::nullopt};
    if (d % 9 == 3 && d > 3) {
        const long long ell = (d - 3) / 9;
        c.Fa = ModMatrix(d, 1, 3, 3 * ell, -2);
    }
    return c;
}

}  // namespace fibsic
