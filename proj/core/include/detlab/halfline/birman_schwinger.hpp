#pragma once

#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/discretization.hpp"
#include "detlab/numerics/matrix.hpp"
#include "detlab/numerics/nystrom.hpp"
#include "detlab/numerics/quadrature.hpp"
#include "detlab/numerics/refinement.hpp"
#include "detlab/numerics/spectral_point.hpp"

namespace detlab {

struct BirmanSchwingerKernel {
  ComplexMatrix matrix;  // W^{1/2} u G v W^{-1/2}
  Boundary bc = Boundary::dirichlet;
  SpectralPoint point{};
  QuadratureGrid grid;
  cplx trace;          // integral of u G v on the diagonal
  cplx trace_square;   // tr K^2
  double hs_norm = 0;  // Hilbert-Schmidt norm
};

// Sub-rule size used for the near-diagonal product integration.
int sub_nodes_for(int nodes_per_panel);

NystromPlan halfline_plan(const QuadratureGrid& grid);

BirmanSchwingerOperator halfline_operator(const Potential1D& V, const SpectralPoint& pt, Boundary bc,
                                          const NystromPlan& plan);

BirmanSchwingerKernel bs_kernel(const Potential1D& V, const SpectralPoint& pt, Boundary bc, const QuadratureGrid& grid);

// det(I + u (H0 - z)^{-1} v) with grid doubling from disc's base grid.
DeterminantResult fredholm_det_halfline(const Potential1D& V, const SpectralPoint& pt, Boundary bc,
                                        const RefinementPolicy& policy, const Discretization& disc = {});

// Fixed grid, no refinement.
cplx fredholm_det_halfline_at(const Potential1D& V, const SpectralPoint& pt, Boundary bc, const QuadratureGrid& grid);

}  // namespace detlab
