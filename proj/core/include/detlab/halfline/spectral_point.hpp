#pragma once

#include "detlab/numerics/spectral_point.hpp"

namespace detlab {

// Branch of sqrt(z) with Im > 0. Throws DomainError when z lies on [0, inf)
// to within 1e-12 (1 + |z|).
SpectralPoint sqrt_principal(cplx z);

// Distance from z to the ray [0, inf).
double distance_to_ray(cplx z);

}  // namespace detlab
