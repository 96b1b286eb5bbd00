#pragma once

#include <vector>

#include "detlab/disk/radial_potential.hpp"
#include "detlab/numerics/discretization.hpp"
#include "detlab/numerics/nystrom.hpp"
#include "detlab/numerics/quadrature.hpp"
#include "detlab/numerics/spectral_point.hpp"

namespace detlab {

// Radial grid on (0, R) with measure r dr, split at V's breakpoints; the
// panel count is doubled `level` times.
QuadratureGrid disk_grid(const RadialPotential2D& V, const Discretization& disc, int level = 0);
NystromPlan disk_plan(const QuadratureGrid& grid);

// V on the plan abscissae and its factors u, v at the nodes.
struct PotentialSamples {
  std::vector<cplx> potential;
  std::vector<cplx> u;
  std::vector<cplx> v;
};

PotentialSamples sample_potential(const RadialPotential2D& V, const NystromPlan& plan);

// Free mode-l Green kernel for one boundary condition at R, sampled on a plan,
// together with the boundary columns built from the free regular solution.
class FreeModeKernel {
 public:
  FreeModeKernel(int ell, Boundary bc, const SpectralPoint& pt, const NystromPlan& plan, double R, double tol);

  int ell() const noexcept { return ell_; }
  Boundary bc() const noexcept { return bc_; }
  double radius() const noexcept { return R_; }
  const SemiSeparableKernel& kernel() const noexcept { return kernel_; }

  // d_r G0^D(R, s) = -u(s) / (R u(R)) at the nodes
  const std::vector<cplx>& dirichlet_column() const noexcept { return dirichlet_column_; }
  // G0^N(s, R) = u(s) / (R u'(R)) at the nodes
  const std::vector<cplx>& neumann_column() const noexcept { return neumann_column_; }
  // -u'(R)/u(R) of the free regular solution
  cplx free_dtn() const noexcept { return free_dtn_; }

 private:
  int ell_;
  Boundary bc_;
  double R_;
  SemiSeparableKernel kernel_;
  std::vector<cplx> dirichlet_column_;
  std::vector<cplx> neumann_column_;
  cplx free_dtn_;
};

BirmanSchwingerOperator mode_operator(const FreeModeKernel& free, const NystromPlan& plan,
                                      const PotentialSamples& samples);

// Boundary quantities of the Dirichlet-side pipeline for one mode.
struct DirichletSideEntries {
  cplx b;     // gamma_N (H^D - z)^{-1} V [gamma_D (H0^N - conj z)^{-1}]^*
  cplx tau;   // gamma_N (H0^D - z)^{-1} V (H^D - z)^{-1} V [gamma_D (H0^N - conj z)^{-1}]^*
  cplx dtn_difference;  // gamma_N (H^D - z)^{-1} V [gamma_N (H0^D - z)^{-1}]^*
};

// Same with the perturbed resolvent taken on the Neumann side.
struct NeumannSideEntries {
  cplx b;    // gamma_N (H0^D - z)^{-1} V [gamma_D (H^N - z)^{-1 *}]^*
  cplx tau;  // gamma_N (H0^D - z)^{-1} V (H^N - z)^{-1} V [gamma_D (H0^N - conj z)^{-1}]^*
};

DirichletSideEntries dirichlet_side_entries(const FreeModeKernel& free_d, const NystromPlan& plan,
                                            const PotentialSamples& samples);
NeumannSideEntries neumann_side_entries(const FreeModeKernel& free_n, const NystromPlan& plan,
                                        const PotentialSamples& samples);

}  // namespace detlab
