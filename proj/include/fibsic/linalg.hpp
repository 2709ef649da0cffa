// SPDX-License-Identifier: Apache-2.0
//
// Minimal dense complex linear algebra: square matrices and vectors of
// std::complex<double>, just the operations the operator layer needs.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace fibsic {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense square complex matrix, row-major.
struct CMatrix {
    int n = 0;
    std::vector<cplx> a;

    CMatrix() = default;
    explicit CMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}

    cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
    const cplx& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }

    static CMatrix identity(int size) {
        CMatrix m(size);
        for (int i = 0; i < size; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline CMatrix mat_mul(const CMatrix& x, const CMatrix& y) {
    if (x.n != y.n) throw std::invalid_argument("mat_mul: size mismatch");
    const int n = x.n;
    CMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cplx xv = x(i, k);
            if (xv == cplx(0.0)) continue;
            for (int j = 0; j < n; ++j) r(i, j) += xv * y(k, j);
        }
    return r;
}

inline CVector mat_apply(const CMatrix& x, const CVector& v) {
    if (static_cast<std::size_t>(x.n) != v.size()) throw std::invalid_argument("mat_apply: size mismatch");
    CVector r(v.size());
    for (int i = 0; i < x.n; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < x.n; ++j) acc += x(i, j) * v[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(i)] = acc;
    }
    return r;
}

inline CMatrix adjoint(const CMatrix& x) {
    CMatrix r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) r(i, j) = std::conj(x(j, i));
    return r;
}

inline CMatrix conjugate(const CMatrix& x) {
    CMatrix r(x.n);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = std::conj(x.a[i]);
    return r;
}

inline CVector conjugate(const CVector& v) {
    CVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = std::conj(v[i]);
    return r;
}

inline double max_abs(const CMatrix& x) {
    double m = 0.0;
    for (const auto& z : x.a) m = std::max(m, std::abs(z));
    return m;
}

inline CMatrix mat_sub(const CMatrix& x, const CMatrix& y) {
    if (x.n != y.n) throw std::invalid_argument("mat_sub: size mismatch");
    CMatrix r(x.n);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

/// <x|y> = sum conj(x_i) y_i.
inline cplx inner(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("inner: size mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

inline double norm(const CVector& v) {
    long double acc = 0.0L;
    for (const auto& z : v) acc += static_cast<long double>(std::norm(z));
    return static_cast<double>(std::sqrt(acc));
}

inline void normalize(CVector& v) {
    const double r = norm(v);
    if (r <= 0.0) throw std::invalid_argument("normalize: zero vector");
    for (auto& z : v) z /= r;
}

inline double unitarity_error(const CMatrix& u) {
    return max_abs(mat_sub(mat_mul(adjoint(u), u), CMatrix::identity(u.n)));
}

/// max_i |x_i - y_i|.
inline double max_abs_diff(const CVector& x, const CVector& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

}  // namespace fibsic
