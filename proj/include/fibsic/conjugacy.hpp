// SPDX-License-Identifier: Apache-2.0
//
// Conjugacy over Z_m: solving G F1 G^{-1} = F2 through the linear
// commutation system, classification of canonical order-three elements,
// and the full symmetry analysis of the Fibonacci matrix mod d_k.

#pragma once

#include <fibsic/fib_lucas.hpp>
#include <fibsic/modmat.hpp>

#include <array>
#include <numeric>
#include <optional>
#include <vector>

namespace fibsic {

namespace detail {

/// Unimodular diagonalization of a 4x4 integer matrix M: returns the
/// diagonal of S and the column transform V with M x = 0 mod q solved by
/// x = V y, diag(S) y = 0 mod q. Row transforms are discarded (no
/// divisibility chain is needed for the nullspace).
struct Diag4 {
    std::array<BigInt, 4> s;
    std::array<std::array<BigInt, 4>, 4> v;
};

inline Diag4 integer_diagonalize_4x4(std::array<std::array<BigInt, 4>, 4> m) {
    Diag4 out;
    auto& v = out.v;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v[i][j] = (i == j) ? 1 : 0;

    auto swap_cols = [&](auto& a, int i, int j) {
        for (int r = 0; r < 4; ++r) std::swap(a[r][i], a[r][j]);
    };
    auto addmul_col = [&](auto& a, int dst, int src, const BigInt& c) {
        for (int r = 0; r < 4; ++r) a[r][dst] += c * a[r][src];
    };

    int t = 0;
    while (t < 4) {
        int pi = -1, pj = -1;
        for (int i = t; i < 4; ++i)
            for (int j = t; j < 4; ++j)
                if (m[i][j] != 0 && (pi < 0 || abs(m[i][j]) < abs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        std::swap(m[t], m[pi]);
        if (pj != t) {
            swap_cols(m, t, pj);
            swap_cols(v, t, pj);
        }
        bool again = false;
        for (int i = t + 1; i < 4; ++i) {
            const BigInt q = m[i][t] / m[t][t];
            if (q != 0)
                for (int j = 0; j < 4; ++j) m[i][j] -= q * m[t][j];
            if (m[i][t] != 0) again = true;
        }
        for (int j = t + 1; j < 4; ++j) {
            const BigInt q = m[t][j] / m[t][t];
            if (q != 0) {
                addmul_col(m, j, t, -q);
                addmul_col(v, j, t, -q);
            }
            if (m[t][j] != 0) again = true;
        }
        if (again) continue;
        ++t;
    }
    for (int i = 0; i < 4; ++i) out.s[i] = m[i][i];
    return out;
}

inline std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> f;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.emplace_back(p, e);
        }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline long long big_mod_ll(const BigInt& x, long long q) {
    BigInt r = x % q;
    if (r < 0) r += q;
    return static_cast<long long>(r);
}

/// Scans the nullspace of the commutation system modulo the prime power
/// q = p^e for a member whose determinant is invertible mod p. Deterministic
/// odometer order, first hit wins.
inline std::optional<std::array<long long, 4>> component_solution(
    const std::array<std::array<BigInt, 4>, 4>& sys, long long p, long long q) {
    const Diag4 snf = integer_diagonalize_4x4(sys);
    std::array<long long, 4> g{}, step{};
    for (int i = 0; i < 4; ++i) {
        const long long si = big_mod_ll(snf.s[i], q);
        g[i] = si == 0 ? q : std::gcd(si, q);
        step[i] = q / g[i];
    }
    std::array<std::array<long long, 4>, 4> v{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v[i][j] = big_mod_ll(snf.v[i][j], q);

    std::array<long long, 4> t{0, 0, 0, 0};
    while (true) {
        std::array<long long, 4> x{};
        for (int i = 0; i < 4; ++i) {
            __int128 acc = 0;
            for (int j = 0; j < 4; ++j) acc += static_cast<__int128>(v[i][j]) * (t[j] * step[j]);
            x[i] = static_cast<long long>(acc % q);
        }
        const long long det = posmod(mulmod(x[0], x[3], q) - mulmod(x[1], x[2], q), q);
        if (det % p != 0) return x;
        int i = 3;
        for (; i >= 0; --i) {
            if (++t[i] < g[i]) break;
            t[i] = 0;
        }
        if (i < 0) return std::nullopt;
    }
}

}  // namespace detail

/// Finds G with G F1 G^{-1} = F2 and gcd(det G, m) = 1, or nullopt when the
/// matrices are not conjugate by an invertible element. The linear system
/// G F1 = F2 G is solved per prime-power factor of m and recombined by CRT.
inline std::optional<ModMatrix> solve_conjugator(const ModMatrix& f1, const ModMatrix& f2) {
    if (f1.m != f2.m) throw std::invalid_argument("solve_conjugator: modulus mismatch");
    const long long m = f1.m;
    const long long a = f1.e[0], b = f1.e[1], c = f1.e[2], d = f1.e[3];
    const long long e = f2.e[0], f = f2.e[1], g = f2.e[2], h = f2.e[3];
    // vec(G) = (g00, g01, g10, g11); rows are the entries of G F1 - F2 G.
    const std::array<std::array<BigInt, 4>, 4> sys{{
        {BigInt(a - e), BigInt(c), BigInt(-f), BigInt(0)},
        {BigInt(b), BigInt(d - e), BigInt(0), BigInt(-f)},
        {BigInt(-g), BigInt(0), BigInt(a - h), BigInt(c)},
        {BigInt(0), BigInt(-g), BigInt(b), BigInt(d - h)},
    }};

    std::array<long long, 4> x{1, 0, 0, 1};
    long long combined = 1;
    for (const auto& [p, ex] : detail::factorize(m)) {
        long long q = 1;
        for (int i = 0; i < ex; ++i) q *= p;
        const auto comp = detail::component_solution(sys, p, q);
        if (!comp) return std::nullopt;
        if (combined == 1) {
            x = *comp;
            combined = q;
        } else {
            // CRT: x = x + combined * t with t = (comp - x) / combined mod q
            long long inv = 0, t0 = 1, r = q, nr = combined % q;
            while (nr != 0) {
                const long long quot = r / nr;
                inv = std::exchange(t0, inv - quot * t0);
                r = std::exchange(nr, r - quot * nr);
            }
            inv = detail::posmod(inv, q);
            for (int i = 0; i < 4; ++i) {
                const long long diff = detail::posmod((*comp)[i] - x[i], q);
                const long long t = detail::mulmod(diff, inv, q);
                x[i] = x[i] + combined * t;
            }
            combined *= q;
        }
    }
    ModMatrix gmat(m, x[0], x[1], x[2], x[3]);
    if (mat_mul(gmat, f1) != mat_mul(f2, gmat) || std::gcd(gmat.det(), m) != 1) return std::nullopt;
    return gmat;
}

enum class Order3Class { zauner, appleby_Fa, neither, not_order3 };

inline const char* to_string(Order3Class c) {
    switch (c) {
        case Order3Class::zauner: return "zauner";
        case Order3Class::appleby_Fa: return "appleby_Fa";
        case Order3Class::neither: return "neither";
        case Order3Class::not_order3: return "not_order3";
    }
    return "?";
}

struct Order3Classification {
    Order3Class cls = Order3Class::not_order3;
    std::optional<ModMatrix> witness;  // G with G X G^{-1} = F_z (or F_a)
};

/// Classifies a canonical order-three candidate over Z_d: it must have
/// multiplicative order 3 and trace -1; conjugacy to F_z is tried first,
/// then to F_a when d = 3 mod 9.
inline Order3Classification classify_order3(const ModMatrix& x, long long d) {
    if (x.m != d) throw std::invalid_argument("classify_order3: matrix modulus != d");
    Order3Classification res;
    if (std::gcd(x.det(), d) != 1) return res;
    const auto ord = mat_order(x, 4);
    if (!ord || *ord != 3 || x.trace() != detail::posmod(-1, d)) return res;
    const auto canon = canonical_matrices(d);
    if (auto g = solve_conjugator(x, canon.Fz)) {
        res.cls = Order3Class::zauner;
        res.witness = g;
        return res;
    }
    if (canon.Fa) {
        if (auto g = solve_conjugator(x, *canon.Fa)) {
            res.cls = Order3Class::appleby_Fa;
            res.witness = g;
            return res;
        }
    }
    res.cls = Order3Class::neither;
    return res;
}

/// A recorded conjugation of a symmetry-group generator onto the Fibonacci
/// matrix: conjugator * base^power * conjugator^{-1} = F_f over Z_m.
struct ConjugationCase {
    std::string label;
    ModMatrix base;
    long long power;
    ModMatrix conjugator;
};

/// The known generator-to-F_f conjugations for d = 4, 8, 19, 48, 124
/// (matrices over Z_2d for even d, Z_d for odd d).
inline std::vector<ConjugationCase> recorded_conjugation_cases() {
    return {
        {"d4_generator_pow7", ModMatrix(8, 2, 1, 7, 3), 7, ModMatrix(8, 1, 3, 3, 2)},
        {"d8_generator_pow11", ModMatrix(16, 6, 11, 5, 1), 11, ModMatrix(16, 5, 5, 4, 1)},
        {"d8_alternative", ModMatrix(16, 1, 5, 13, 0), 1, ModMatrix(16, 1, 4, 5, 5)},
        {"d19_generator_pow17", ModMatrix(19, 3, 12, 7, 15), 17, ModMatrix(19, 11, 10, 0, 7)},
        {"d19_diagonal", ModMatrix(19, 15, 0, 0, 5), 1, ModMatrix(19, 8, 5, 6, 6)},
        {"d48_generator_pow41", ModMatrix(96, 4, 37, 25, 63), 41, ModMatrix(96, 10, 47, 21, 22)},
        {"d124_generator", ModMatrix(248, 58, 133, 115, 191), 1, ModMatrix(248, 100, 15, 85, 45)},
    };
}

inline bool verify_conjugation_case(const ConjugationCase& c) {
    const auto gi = mat_inverse(c.conjugator);
    if (!gi) return false;
    return mat_mul(mat_mul(c.conjugator, mat_pow(c.base, c.power)), *gi) == fibonacci_matrix(c.base.m);
}

/// Everything the Fibonacci matrix does over Z_{d_k}.
struct SymmetryAnalysis {
    long k = 0;
    long long d = 0;
    std::optional<long long> order;       // nullopt = exceeds cap
    long long det = 0;                    // mod d
    long long trace_at_2k = 0;            // trace of F_f^{2k} mod d
    std::optional<long long> scalar_at_3k;  // diagonal value of F_f^{3k}, even k only
    Order3Classification order3;          // classification of F_f^{2k}
};

inline SymmetryAnalysis analyze_fibonacci_symmetry(long k, long long order_cap = 0) {
    if (k < 1) throw std::invalid_argument("analyze_fibonacci_symmetry: k must be >= 1");
    SymmetryAnalysis out;
    out.k = k;
    out.d = dimension_ll(k);
    const ModMatrix ff = fibonacci_matrix(out.d);
    out.order = mat_order(ff, order_cap > 0 ? order_cap : 12 * k);
    out.det = ff.det();
    const ModMatrix f2k = mat_pow(ff, 2 * k);
    out.trace_at_2k = f2k.trace();
    if (k % 2 == 0) {
        const ModMatrix f3k = mat_pow(ff, 3 * k);
        if (f3k.is_scalar()) out.scalar_at_3k = f3k.e[0];
    }
    out.order3 = classify_order3(f2k, out.d);
    return out;
}

}  // namespace fibsic
