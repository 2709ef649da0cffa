// SPDX-License-Identifier: Apache-2.0
//
// Fibonacci and Lucas numbers in exact arbitrary-precision arithmetic,
// the Lucas dimension sequence d_k = L_{2k} + 1, and the identity suites
// that the rest of the library relies on.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibsic {

using BigInt = boost::multiprecision::cpp_int;

/// Exact n-th Fibonacci number, F_0 = 0, F_1 = 1.
inline BigInt fibonacci(long n) {
    if (n < 0) throw std::invalid_argument("fibonacci: n must be >= 0");
    BigInt a = 0, b = 1;
    for (long i = 0; i < n; ++i) {
        BigInt next = a + b;
        a = b;
        b = next;
    }
    return a;
}

/// Exact n-th Lucas number, L_0 = 2, L_1 = 1.
inline BigInt lucas(long n) {
    if (n < 0) throw std::invalid_argument("lucas: n must be >= 0");
    BigInt a = 2, b = 1;
    for (long i = 0; i < n; ++i) {
        BigInt next = a + b;
        a = b;
        b = next;
    }
    return a;
}

/// One entry of the dimension sequence d_k = L_{2k} + 1 = 4, 8, 19, 48, ...
struct DimensionEntry {
    long k = 0;
    BigInt d;
    int d_mod3 = 0;
    BigInt squarefree_witness;  // F_{2k}; satisfies (d+1)(d-3) = 5 * witness^2
};

inline DimensionEntry dimension(long k) {
    if (k < 1) throw std::invalid_argument("dimension: k must be >= 1");
    DimensionEntry e;
    e.k = k;
    e.d = lucas(2 * k) + 1;
    e.d_mod3 = static_cast<int>(e.d % 3);
    e.squarefree_witness = fibonacci(2 * k);
    return e;
}

/// Dimension as a plain integer; throws if it does not fit.
inline long long dimension_ll(long k) {
    const BigInt d = dimension(k).d;
    if (d > std::numeric_limits<long long>::max())
        throw std::overflow_error("dimension_ll: d_k exceeds 64-bit range");
    return static_cast<long long>(d);
}

struct PropertyCheck {
    std::string name;
    bool passed = false;
    std::string detail;  // filled in on failure
};

struct PropertyReport {
    std::vector<PropertyCheck> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    std::size_t failure_count() const {
        std::size_t n = 0;
        for (const auto& c : checks)
            if (!c.passed) ++n;
        return n;
    }
};

namespace detail {
inline void record(PropertyReport& r, std::string name, bool ok, const BigInt& lhs, const BigInt& rhs) {
    PropertyCheck c;
    c.name = std::move(name);
    c.passed = ok;
    if (!ok) {
        std::ostringstream os;
        os << lhs << " != " << rhs;
        c.detail = os.str();
    }
    r.checks.push_back(std::move(c));
}
}  // namespace detail

/// Checks the dimension-sequence properties for 1 <= k <= k_max:
/// the order-3 linear recurrence, the period-four residues mod 3,
/// d_{4l} = 3 mod 9, and (d_k+1)(d_k-3) = 5 F_{2k}^2.
inline PropertyReport check_dimension_properties(long k_max) {
    if (k_max < 4) throw std::invalid_argument("check_dimension_properties: k_max must be >= 4");
    PropertyReport r;
    std::vector<BigInt> d(static_cast<std::size_t>(k_max) + 4);
    for (long k = 1; k <= k_max + 3; ++k) d[static_cast<std::size_t>(k)] = lucas(2 * k) + 1;

    static const int mod3_pattern[4] = {1, 2, 1, 0};
    for (long k = 1; k <= k_max; ++k) {
        const auto i = static_cast<std::size_t>(k);
        detail::record(r, "recurrence k=" + std::to_string(k),
                       d[i + 3] == 4 * d[i + 2] - 4 * d[i + 1] + d[i],
                       d[i + 3], 4 * d[i + 2] - 4 * d[i + 1] + d[i]);
        detail::record(r, "mod3 k=" + std::to_string(k),
                       d[i] % 3 == mod3_pattern[(k - 1) % 4], d[i] % 3, mod3_pattern[(k - 1) % 4]);
        if (k % 4 == 0)
            detail::record(r, "mod9 k=" + std::to_string(k), d[i] % 9 == 3, d[i] % 9, 3);
        const BigInt w = fibonacci(2 * k);
        detail::record(r, "squarefree k=" + std::to_string(k),
                       (d[i] + 1) * (d[i] - 3) == 5 * w * w, (d[i] + 1) * (d[i] - 3), 5 * w * w);
    }
    return r;
}

/// Checks the six Fibonacci/Lucas identities for 1 <= n <= n_max
/// as exact integer equalities; divisibility F_n | F_{kn} for k <= 6.
inline PropertyReport check_identities(long n_max) {
    if (n_max < 1) throw std::invalid_argument("check_identities: n_max must be >= 1");
    PropertyReport r;
    std::vector<BigInt> F(static_cast<std::size_t>(6 * n_max) + 2), L(F.size());
    F[0] = 0;
    F[1] = 1;
    L[0] = 2;
    L[1] = 1;
    for (std::size_t i = 2; i < F.size(); ++i) {
        F[i] = F[i - 1] + F[i - 2];
        L[i] = L[i - 1] + L[i - 2];
    }
    auto at = [](const std::vector<BigInt>& v, long i) { return v[static_cast<std::size_t>(i)]; };

    for (long n = 1; n <= n_max; ++n) {
        for (long k = 1; k <= 6; ++k)
            detail::record(r, "divisibility n=" + std::to_string(n) + " k=" + std::to_string(k),
                           at(F, n) == 0 ? at(F, k * n) == 0 : at(F, k * n) % at(F, n) == 0,
                           at(F, k * n) % (at(F, n) == 0 ? BigInt(1) : at(F, n)), 0);
        detail::record(r, "lucas_sum n=" + std::to_string(n),
                       at(L, n) == at(F, n - 1) + at(F, n + 1), at(L, n), at(F, n - 1) + at(F, n + 1));
        detail::record(r, "squarefree n=" + std::to_string(n),
                       at(L, 2 * n) * at(L, 2 * n) == 5 * at(F, 2 * n) * at(F, 2 * n) + 4,
                       at(L, 2 * n) * at(L, 2 * n), 5 * at(F, 2 * n) * at(F, 2 * n) + 4);
        detail::record(r, "F6n n=" + std::to_string(n),
                       at(F, 6 * n) == at(F, 2 * n) * (at(L, 4 * n) + 1),
                       at(F, 6 * n), at(F, 2 * n) * (at(L, 4 * n) + 1));
        detail::record(r, "L4n n=" + std::to_string(n),
                       at(L, 4 * n) + 1 == at(L, 2 * n) * at(L, 2 * n) - 1,
                       at(L, 4 * n) + 1, at(L, 2 * n) * at(L, 2 * n) - 1);
        detail::record(r, "F6n1 n=" + std::to_string(n),
                       at(F, 6 * n - 1) + at(L, 2 * n) == at(F, 2 * n - 1) * (at(L, 4 * n) + 1),
                       at(F, 6 * n - 1) + at(L, 2 * n), at(F, 2 * n - 1) * (at(L, 4 * n) + 1));
    }
    return r;
}

}  // namespace fibsic
