#pragma once

#include <functional>
#include <string>
#include <vector>

#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/types.hpp"

namespace detlab {

struct RadialPotential2D {
  std::function<cplx(double)> eval;
  double R = 1.0;
  std::vector<double> breakpoints;  // discontinuities inside (0, R)
  double p_exponent = 2.0;          // declared integrability exponent, 4/3 < p <= 2
  bool real_valued = true;
  std::string description;

  cplx operator()(double r) const { return eval(r); }
};

RadialPotential2D zero_radial_potential(double R = 1.0);
// amplitude exp(-r^2 / (2 width^2))
RadialPotential2D radial_gaussian(cplx amplitude, double width, double R = 1.0);
// Linear interpolation, first sample held on (0, r_0), zero beyond the last.
RadialPotential2D radial_tabulated(PotentialTable table, double R = 1.0);
RadialPotential2D scaled(const RadialPotential2D& V, cplx factor);

// Integral of |V|^p r dr over (0, R); throws ParameterError when p is out of
// range or the integral is not finite.
double radial_lp_integral(const RadialPotential2D& V);

}  // namespace detlab
