// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header.

#pragma once

#include <fibsic/conjugacy.hpp>
#include <fibsic/coneigen.hpp>
#include <fibsic/fib_lucas.hpp>
#include <fibsic/fiducial_io.hpp>
#include <fibsic/frame_potential.hpp>
#include <fibsic/lbfgs.hpp>
#include <fibsic/linalg.hpp>
#include <fibsic/modmat.hpp>
#include <fibsic/report.hpp>
#include <fibsic/search.hpp>
#include <fibsic/verify.hpp>
#include <fibsic/wh_group.hpp>
