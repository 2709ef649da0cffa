// SPDX-License-Identifier: Apache-2.0
//
// Con-eigenvector machinery for an anti-unitary symmetry J U: the order of
// conj(U) U up to global phase, the projector onto its fixed space, and the
// symmetrization map that lands arbitrary vectors inside it.

#pragma once

#include <fibsic/linalg.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>

namespace fibsic {

struct ConEigenData {
    CMatrix U;     // unitary part of the anti-unitary
    int n = 0;     // least n with (conj(U) U)^n proportional to identity
    double theta = 0.0;  // phase of that scalar; absorbed before averaging
    CMatrix Q;     // projector onto the relevant eigenspace of conj(U) U
    int rank = 0;  // round(tr Q): complex dimension of the con-eigenspace
};

/// Builds the projector Q = (1/n) sum_j V^j where V is conj(U) U with its
/// n-th-root-of-unity global phase absorbed. Throws when no power of
/// conj(U) U up to cap is proportional to the identity.
inline ConEigenData coneigen_projector(const CMatrix& u, int cap = 200) {
    const int d = u.n;
    const CMatrix v = mat_mul(conjugate(u), u);
    CMatrix p = v;
    int n = 0;
    double theta = 0.0;
    for (int j = 1; j <= cap; ++j) {
        double off = 0.0;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                if (r != c) off = std::max(off, std::abs(p(r, c)));
        double diag = 0.0;
        for (int r = 0; r < d; ++r) diag = std::max(diag, std::abs(p(r, r) - p(0, 0)));
        if (off < 1e-8 && diag < 1e-8) {
            n = j;
            theta = std::arg(p(0, 0));
            break;
        }
        p = mat_mul(p, v);
    }
    if (n == 0) throw std::runtime_error("coneigen_projector: order exceeds cap");

    CMatrix vc = v;
    const cplx corr = std::polar(1.0, -theta / n);
    for (auto& z : vc.a) z *= corr;

    CMatrix q(d);
    CMatrix term = CMatrix::identity(d);
    for (int j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < q.a.size(); ++i) q.a[i] += term.a[i];
        term = mat_mul(term, vc);
    }
    for (auto& z : q.a) z /= static_cast<double>(n);

    ConEigenData ce;
    ce.U = u;
    ce.n = n;
    ce.theta = theta;
    ce.Q = std::move(q);
    double tr = 0.0;
    for (int i = 0; i < d; ++i) tr += ce.Q(i, i).real();
    ce.rank = static_cast<int>(std::lround(tr));
    return ce;
}

/// psi' = conj(U Q phi) + Q phi, normalized; satisfies J U psi = psi.
/// Returns nullopt when psi' degenerates (caller should resample phi).
inline std::optional<CVector> symmetrize(const CVector& phi, const ConEigenData& ce) {
    const double phi_norm = norm(phi);
    if (phi_norm <= 0.0) throw std::invalid_argument("symmetrize: phi must be nonzero");
    const CVector y = mat_apply(ce.Q, phi);
    CVector psi = conjugate(mat_apply(ce.U, y));
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += y[i];
    const double r = norm(psi);
    if (r < 1e-8 * phi_norm) return std::nullopt;
    for (auto& z : psi) z /= r;
    return psi;
}

/// ||conj(U psi) - psi||: zero exactly on con-eigenvectors with eigenvalue 1.
inline double coneigen_residual(const CVector& psi, const CMatrix& u) {
    CVector mapped = conjugate(mat_apply(u, psi));
    long double acc = 0.0L;
    for (std::size_t i = 0; i < psi.size(); ++i) acc += static_cast<long double>(std::norm(mapped[i] - psi[i]));
    return static_cast<double>(std::sqrt(acc));
}

}  // namespace fibsic
