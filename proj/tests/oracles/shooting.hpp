#pragma once

#include "vpt/params.hpp"

namespace vpt::testing {

/// Ground-state energy by Numerov integration of the even solution outward
/// from x = 0 and bisection on the sign of psi(x_end). Natural units only.
double shooting_energy(double g, double e_lo, double e_hi, double x_end = 6.0, double h = 1e-3);

}  // namespace vpt::testing
