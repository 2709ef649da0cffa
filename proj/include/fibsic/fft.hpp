// SPDX-License-Identifier: Apache-2.0
//
// Self-contained DFT of arbitrary length: radix-2 in-place core plus a
// Bluestein chirp wrapper for non-power-of-two sizes.

#pragma once

#include <fibsic/linalg.hpp>

#include <numbers>
#include <vector>

namespace fibsic::detail {

inline void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cplx wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w = 1.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& z : a) z /= static_cast<double>(n);
}

/// Forward DFT X_k = sum_n x_n exp(-2 pi i n k / N), any N.
inline std::vector<cplx> dft(const std::vector<cplx>& x) {
    const std::size_t n = x.size();
    if ((n & (n - 1)) == 0) {
        std::vector<cplx> a = x;
        fft_pow2(a, false);
        return a;
    }
    // Bluestein: X_k = conj(w_k) sum_n (x_n conj(w_n)) w_{k-n}, w_m = exp(i pi m^2 / N)
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<cplx> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long long sq = static_cast<long long>(i) * static_cast<long long>(i) % (2 * static_cast<long long>(n));
        w[i] = std::polar(1.0, std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n));
    }
    std::vector<cplx> a(m), b(m);
    for (std::size_t i = 0; i < n; ++i) a[i] = x[i] * std::conj(w[i]);
    b[0] = w[0];
    for (std::size_t i = 1; i < n; ++i) b[i] = b[m - i] = w[i];
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, true);
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::conj(w[i]) * a[i];
    return out;
}

/// Inverse DFT x_n = (1/N) sum_k X_k exp(+2 pi i n k / N), any N.
inline std::vector<cplx> idft(const std::vector<cplx>& x) {
    std::vector<cplx> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = std::conj(x[i]);
    c = dft(c);
    for (auto& z : c) z = std::conj(z) / static_cast<double>(x.size());
    return c;
}

}  // namespace fibsic::detail
