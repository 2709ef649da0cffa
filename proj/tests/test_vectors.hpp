// SPDX-License-Identifier: Apache-2.0
//
// Shared fixture: the exact d = 4 fiducial with the Fibonacci symmetry,
// written in radicals and evaluated in double precision.

#pragma once

#include <fibsic/linalg.hpp>

#include <cmath>

namespace fibsic::testvec {

inline CVector exact_d4_fiducial() {
    const double s2 = std::sqrt(2.0);
    const double s5 = std::sqrt(5.0);
    const double s10 = std::sqrt(10.0);
    const double r = std::sqrt(1.0 + s5);
    CVector psi{
        cplx(8.0 * s2 - 8.0, 0.0),
        cplx((s10 + s2) * r + 4.0 * s2 - 4.0, -((-s10 - s2 + 2.0 * s5 + 2.0) * r + 4.0)),
        cplx(0.0, 8.0),
        cplx(-(s10 + s2) * r + 4.0 * s2 - 4.0, -((s10 + s2 - 2.0 * s5 - 2.0) * r + 4.0)),
    };
    normalize(psi);
    return psi;
}

}  // namespace fibsic::testvec
