#pragma once

#include "detlab/numerics/types.hpp"

namespace detlab {

// Energy z off [0, inf) together with the branch of sqrt(z) in the upper
// half-plane. Built by sqrt_principal (halfline/spectral_point.hpp).
struct SpectralPoint {
  cplx z;
  cplx sqrt_z;
};

}  // namespace detlab
