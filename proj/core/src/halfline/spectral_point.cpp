#include "detlab/halfline/spectral_point.hpp"

#include <cmath>
#include <sstream>

#include "detlab/numerics/errors.hpp"

namespace detlab {

double distance_to_ray(cplx z) {
  return z.real() >= 0.0 ? std::abs(z.imag()) : std::abs(z);
}

SpectralPoint sqrt_principal(cplx z) {
  if (!is_finite(z)) throw DomainError("sqrt_principal: z is not finite");
  if (distance_to_ray(z) <= 1e-12 * (1.0 + std::abs(z))) {
    std::ostringstream os;
    os << "z = (" << z.real() << ", " << z.imag() << ") lies on the essential spectrum [0, inf)";
    throw DomainError(os.str());
  }
  // sqrt(-z) has Re > 0 off the ray, so i sqrt(-z) has Im > 0
  const cplx k = imag_unit * std::sqrt(-z);
  return SpectralPoint{z, k};
}

}  // namespace detlab
