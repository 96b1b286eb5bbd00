#pragma once

#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/nystrom.hpp"
#include "detlab/numerics/spectral_point.hpp"

namespace detlab {

// Kernel of (H0 - z)^{-1} on the half-line with the given boundary condition
// at 0: s(x_<) exp(i k x_>) / W(exp(i k .), s).
cplx free_green_kernel(Boundary bc, const SpectralPoint& pt, double x, double y);

// The same kernel sampled on the abscissae of a Nystrom plan.
SemiSeparableKernel free_kernel_table(Boundary bc, const SpectralPoint& pt, const NystromPlan& plan);

// Free regular solution s (sin(k x)/k or cos(k x)) and outgoing solution
// exp(i k x) in scaled form.
ScaledValue free_regular(Boundary bc, const SpectralPoint& pt, double x);
ScaledValue free_outgoing(const SpectralPoint& pt, double x);

}  // namespace detlab
