#pragma once

#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/discretization.hpp"
#include "detlab/numerics/nystrom.hpp"
#include "detlab/numerics/refinement.hpp"
#include "detlab/numerics/spectral_point.hpp"

namespace detlab {

// 1 - gamma_N (H^D - z)^{-1} V [gamma_D (H0^N - conj z)^{-1}]^*, i.e. 1 + h'(0)
// with h = (H^D - z)^{-1} (V c), c(y) = G0^N(y, 0). The perturbed resolvent
// comes from the factorized resolvent identity on the Nystrom grid.
cplx boundary_scalar_1d_on(const Potential1D& V, const SpectralPoint& pt, const NystromPlan& plan);

DeterminantResult boundary_scalar_1d_refined(const Potential1D& V, const SpectralPoint& pt,
                                             const RefinementPolicy& policy, const Discretization& disc = {});

cplx boundary_scalar_1d(const Potential1D& V, const SpectralPoint& pt, const Discretization& disc = {});

}  // namespace detlab
