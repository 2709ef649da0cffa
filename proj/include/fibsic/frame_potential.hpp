// SPDX-License-Identifier: Apache-2.0
//
// The fourth-moment frame potential
//   P(psi) = sum_{j,k} | sum_l conj(psi_{j+l}) psi_l conj(psi_{k+l}) psi_{j+k+l} |^2
// (indices mod d), its lower bound 2/(d+1), and the composite objective
// raw 2d reals -> symmetrize -> normalize -> P with its analytic gradient.

#pragma once

#include <fibsic/coneigen.hpp>
#include <fibsic/fft.hpp>
#include <fibsic/linalg.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fibsic {

inline double welch_bound(int d) { return 2.0 / (d + 1); }

namespace detail {

inline int wrap_inc(int i, int d) { return i + 1 == d ? 0 : i + 1; }

/// Direct triple-loop evaluation, long double accumulation.
inline double frame_potential_unchecked(const CVector& psi) {
    const int d = static_cast<int>(psi.size());
    std::vector<cplx> c(psi.size());
    long double tot = 0.0L;
    for (int j = 0; j < d; ++j) {
        for (int l = 0, jl = j; l < d; ++l, jl = wrap_inc(jl, d))
            c[static_cast<std::size_t>(l)] = std::conj(psi[static_cast<std::size_t>(jl)]) * psi[static_cast<std::size_t>(l)];
        for (int k = 0; k < d; ++k) {
            cplx t = 0.0;
            for (int l = 0, lk = k; l < d; ++l, lk = wrap_inc(lk, d))
                t += c[static_cast<std::size_t>(l)] * std::conj(c[static_cast<std::size_t>(lk)]);
            tot += static_cast<long double>(std::norm(t));
        }
    }
    return static_cast<double>(tot);
}

/// Same value through the circular autocorrelation of c_j, one DFT per j.
inline double frame_potential_fft_unchecked(const CVector& psi) {
    const int d = static_cast<int>(psi.size());
    std::vector<cplx> c(psi.size());
    long double tot = 0.0L;
    for (int j = 0; j < d; ++j) {
        for (int l = 0, jl = j; l < d; ++l, jl = wrap_inc(jl, d))
            c[static_cast<std::size_t>(l)] = std::conj(psi[static_cast<std::size_t>(jl)]) * psi[static_cast<std::size_t>(l)];
        auto spectrum = dft(c);
        for (auto& z : spectrum) z = cplx(std::norm(z), 0.0);
        const auto acf = idft(spectrum);
        for (const auto& z : acf) tot += static_cast<long double>(std::norm(z));
    }
    return static_cast<double>(tot);
}

/// Value plus the conjugate Wirtinger gradient G_m = dP/d conj(psi_m).
inline double fp_value_and_conj_grad(const CVector& psi, CVector& grad) {
    const int d = static_cast<int>(psi.size());
    grad.assign(psi.size(), cplx(0.0));
    std::vector<cplx> c(psi.size());
    long double tot = 0.0L;
    for (int j = 0; j < d; ++j) {
        for (int l = 0, jl = j; l < d; ++l, jl = wrap_inc(jl, d))
            c[static_cast<std::size_t>(l)] = std::conj(psi[static_cast<std::size_t>(jl)]) * psi[static_cast<std::size_t>(l)];
        for (int k = 0; k < d; ++k) {
            cplx t = 0.0;
            for (int l = 0, lk = k; l < d; ++l, lk = wrap_inc(lk, d))
                t += c[static_cast<std::size_t>(l)] * std::conj(c[static_cast<std::size_t>(lk)]);
            tot += static_cast<long double>(std::norm(t));
            const cplx w = std::conj(t);
            for (int l = 0, jl = j, kl = k, jkl = (j + k) % d; l < d;
                 ++l, jl = wrap_inc(jl, d), kl = wrap_inc(kl, d), jkl = wrap_inc(jkl, d)) {
                const cplx pl = psi[static_cast<std::size_t>(l)];
                const cplx pj = psi[static_cast<std::size_t>(jl)];
                const cplx pk = psi[static_cast<std::size_t>(kl)];
                const cplx pjk = psi[static_cast<std::size_t>(jkl)];
                grad[static_cast<std::size_t>(jl)] += w * (pl * std::conj(pk) * pjk);
                grad[static_cast<std::size_t>(kl)] += w * (std::conj(pj) * pl * pjk);
                grad[static_cast<std::size_t>(l)] += t * (pj * pk * std::conj(pjk));
                grad[static_cast<std::size_t>(jkl)] += t * (pj * std::conj(pl) * pk);
            }
        }
    }
    return static_cast<double>(tot);
}

}  // namespace detail

/// Frame potential of a unit vector; always >= 2/(d+1) up to roundoff.
inline double frame_potential(const CVector& psi) {
    if (std::abs(norm(psi) - 1.0) > 1e-10)
        throw std::invalid_argument("frame_potential: input must be unit norm");
    return detail::frame_potential_unchecked(psi);
}

/// FFT evaluation path; agrees with frame_potential to ~1e-11.
inline double frame_potential_fft(const CVector& psi) {
    if (std::abs(norm(psi) - 1.0) > 1e-10)
        throw std::invalid_argument("frame_potential_fft: input must be unit norm");
    return detail::frame_potential_fft_unchecked(psi);
}

struct DegenerateSymmetrization : std::runtime_error {
    DegenerateSymmetrization() : std::runtime_error("symmetrization degenerated; resample") {}
};

/// Objective over 2d raw reals: phi = re + i im is symmetrized into the
/// con-eigenspace, normalized, then scored by the frame potential. The
/// analytic gradient backpropagates through the whole chain.
class SymmetricObjective {
  public:
    SymmetricObjective(ConEigenData ce, bool use_fft = false) : ce_(std::move(ce)), use_fft_(use_fft) {}

    int dim() const { return ce_.U.n; }
    const ConEigenData& coneigen() const { return ce_; }

    /// The unit-norm symmetrized vector behind a raw parameter point.
    CVector symmetrized_point(const std::vector<double>& x) const {
        CVector phi = to_complex(x);
        CVector y = mat_apply(ce_.Q, phi);
        CVector psi = conjugate(mat_apply(ce_.U, y));
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += y[i];
        const double r = norm(psi);
        if (r < 1e-8 * norm(phi)) throw DegenerateSymmetrization();
        for (auto& z : psi) z /= r;
        return psi;
    }

    double value(const std::vector<double>& x) const {
        const CVector psi = symmetrized_point(x);
        return use_fft_ ? detail::frame_potential_fft_unchecked(psi) : detail::frame_potential_unchecked(psi);
    }

    double value_and_grad(const std::vector<double>& x, std::vector<double>& grad) const {
        const int d = dim();
        CVector phi = to_complex(x);
        const double phi_norm = norm(phi);
        const CVector y = mat_apply(ce_.Q, phi);
        CVector psip = conjugate(mat_apply(ce_.U, y));
        for (std::size_t i = 0; i < psip.size(); ++i) psip[i] += y[i];
        const double r = norm(psip);
        if (r < 1e-8 * phi_norm) throw DegenerateSymmetrization();
        CVector psi(psip.size());
        for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = psip[i] / r;

        CVector g;
        double f = detail::fp_value_and_conj_grad(psi, g);
        if (use_fft_) f = detail::frame_potential_fft_unchecked(psi);

        // through normalization psi = psi'/r
        long double sacc = 0.0L;
        for (std::size_t i = 0; i < g.size(); ++i)
            sacc += static_cast<long double>((g[i] * std::conj(psip[i])).real());
        const double s = static_cast<double>(sacc);
        CVector gp(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) gp[i] = g[i] / r - (s / (r * r * r)) * psip[i];

        // through psi' = conj(U y) + y:  G_y = G' + conj(U^T G')
        CVector gy(gp.size());
        for (int nn = 0; nn < d; ++nn) {
            cplx acc = 0.0;
            for (int mm = 0; mm < d; ++mm) acc += ce_.U(mm, nn) * gp[static_cast<std::size_t>(mm)];
            gy[static_cast<std::size_t>(nn)] = gp[static_cast<std::size_t>(nn)] + std::conj(acc);
        }

        // through y = Q phi:  G_phi = Q^† G_y  (done as the explicit adjoint)
        CVector gphi(gy.size());
        for (int mm = 0; mm < d; ++mm) {
            cplx acc = 0.0;
            for (int nn = 0; nn < d; ++nn) acc += std::conj(ce_.Q(nn, mm)) * gy[static_cast<std::size_t>(nn)];
            gphi[static_cast<std::size_t>(mm)] = acc;
        }

        grad.assign(2 * static_cast<std::size_t>(d), 0.0);
        for (int i = 0; i < d; ++i) {
            grad[static_cast<std::size_t>(i)] = 2.0 * gphi[static_cast<std::size_t>(i)].real();
            grad[static_cast<std::size_t>(d + i)] = 2.0 * gphi[static_cast<std::size_t>(i)].imag();
        }
        return f;
    }

    std::vector<double> gradient(const std::vector<double>& x) const {
        std::vector<double> g;
        value_and_grad(x, g);
        return g;
    }

    static std::vector<double> to_raw(const CVector& phi) {
        std::vector<double> x(2 * phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i) {
            x[i] = phi[i].real();
            x[phi.size() + i] = phi[i].imag();
        }
        return x;
    }

  private:
    CVector to_complex(const std::vector<double>& x) const {
        const auto d = static_cast<std::size_t>(dim());
        if (x.size() != 2 * d) throw std::invalid_argument("objective: wrong parameter count");
        CVector phi(d);
        for (std::size_t i = 0; i < d; ++i) phi[i] = cplx(x[i], x[d + i]);
        return phi;
    }

    ConEigenData ce_;
    bool use_fft_;
};

}  // namespace fibsic
