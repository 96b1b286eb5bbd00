#pragma once

#include <vector>

#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/quadrature.hpp"
#include "detlab/numerics/spectral_point.hpp"

namespace detlab {

// Jost solution from a direct discretization of its Volterra integral
// equation, f(x) = exp(ikx) - int_x^inf sin(k(x-y))/k V(y) f(y) dy, solved for
// F = f exp(-ikx) with product integration on the diagonal panel.
struct JostIntegralSolution {
  QuadratureGrid grid;
  std::vector<cplx> values;  // f at the nodes
  cplx f0;                   // 1 + k^{-1} int sin(kx) V f
  cplx fp0;                  // ik + ... from int cos(kx) V f
};

JostIntegralSolution jost_volterra(const Potential1D& V, const SpectralPoint& pt, const QuadratureGrid& grid);

// Dirichlet: 1 + k^{-1} int sin(kx) V f dx; Neumann: 1 + i k^{-1} int cos(kx) V f dx.
cplx jost_integral_form(const JostIntegralSolution& sol, const SpectralPoint& pt, Boundary bc);

}  // namespace detlab
