#pragma once

#include <vector>

#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/discretization.hpp"
#include "detlab/numerics/quadrature.hpp"
#include "detlab/numerics/spectral_point.hpp"

namespace detlab {

struct SolutionSample {
  QuadratureGrid grid;
  std::vector<cplx> values;
  std::vector<cplx> derivatives;
  cplx value_at_0;
  cplx derivative_at_0;
};

// Composite Gauss-Legendre grid on (0, x_max) split at V's breakpoints; the
// panel count is doubled `level` times.
QuadratureGrid halfline_grid(const Potential1D& V, const Discretization& disc, int level = 0);

// phi with phi(0) = 0, phi'(0) = 1
SolutionSample regular_solution_dirichlet(const Potential1D& V, const SpectralPoint& pt, const QuadratureGrid& grid,
                                          double tol = 1e-12);
// theta with theta(0) = 1, theta'(0) = 0
SolutionSample regular_solution_neumann(const Potential1D& V, const SpectralPoint& pt, const QuadratureGrid& grid,
                                        double tol = 1e-12);
// Solution asymptotic to exp(i sqrt(z) x), launched at x_max. Throws
// TruncationError when V's tail bound exceeds 1e-10.
SolutionSample jost_solution(const Potential1D& V, const SpectralPoint& pt, const QuadratureGrid& grid,
                             double tol = 1e-12);

SolutionSample regular_solution_dirichlet(const Potential1D& V, const SpectralPoint& pt);
SolutionSample regular_solution_neumann(const Potential1D& V, const SpectralPoint& pt);
SolutionSample jost_solution(const Potential1D& V, const SpectralPoint& pt);

// (f(0), f'(0)) of the Jost solution without sampling the interior.
std::pair<cplx, cplx> jost_boundary_values(const Potential1D& V, const SpectralPoint& pt, double tol = 1e-12);

// f g' - f' g at a grid node or at 0.
cplx wronskian(const SolutionSample& f, const SolutionSample& g, double x);

// Dirichlet: f'(0)/f(0); Neumann: -f(0)/f'(0).
cplx m_function(const Potential1D& V, const SpectralPoint& pt, Boundary bc, double tol = 1e-12);
cplx free_m_function(const SpectralPoint& pt, Boundary bc);

enum class SolutionKind { regular_dirichlet, regular_neumann, jost };

// Max over nodes of |psi - (free term + Volterra integral)| / max |psi|.
double volterra_residual(const Potential1D& V, const SpectralPoint& pt, const SolutionSample& sample,
                         SolutionKind kind);

// Max over nodes of |psi'' - (V - z) psi| / max |psi|, with psi'' from
// spectral differentiation of the sampled derivative on each panel.
double collocation_residual(const Potential1D& V, const SpectralPoint& pt, const SolutionSample& sample);

}  // namespace detlab
