#pragma once

#include <optional>

#include "detlab/disk/mode_kernels.hpp"
#include "detlab/disk/radial_potential.hpp"
#include "detlab/disk/radial_solution.hpp"
#include "detlab/numerics/discretization.hpp"

namespace detlab {

// -u'(R)/u(R) for the regular mode-l solution. V == nullptr gives the free
// value. Throws SpectrumProximityError when u(R) vanishes to 1e-12.
cplx dtn_mode(int ell, const RadialPotential2D* V, double R, const SpectralPoint& pt, const RadialOptions& opts = {});
cplx dtn_mode(int ell, const RadialPotential2D& V, const SpectralPoint& pt, const RadialOptions& opts = {});
cplx free_dtn_mode(int ell, double R, const SpectralPoint& pt, const RadialOptions& opts = {});

// u(R)/u'(R), from its own integration (launched at a different radius).
cplx ntd_mode(int ell, const RadialPotential2D& V, const SpectralPoint& pt, const RadialOptions& opts = {});

// Mode-l Green kernel of the Dirichlet or Neumann realization at (r, s),
// free when V == nullptr.
cplx radial_green_kernel(int ell, Boundary bc, const RadialPotential2D* V, double R, const SpectralPoint& pt,
                         double r, double s, const RadialOptions& opts = {});

struct ModeData {
  int ell = 0;
  cplx m;       // DtN of the perturbed mode
  cplx m0;      // free DtN
  cplx d;       // m / m0
  cplx b;       // boundary Birman-Schwinger entry
  cplx tau;     // trace term of the Dirichlet side
  cplx dtn_difference;  // m0 - m from the resolvent
  cplx det2_dirichlet;
  cplx det2_neumann;
};

// Per-mode operators of one potential at one energy on one radial grid.
class DiskModeSolver {
 public:
  DiskModeSolver(const RadialPotential2D& V, const SpectralPoint& pt, const Discretization& disc, int level = 0);

  const RadialPotential2D& potential() const noexcept { return V_; }
  const SpectralPoint& point() const noexcept { return pt_; }
  const NystromPlan& plan() const noexcept { return plan_; }
  const PotentialSamples& samples() const noexcept { return samples_; }
  double ode_tolerance() const noexcept { return ode_tol_; }

  FreeModeKernel free_kernel(int ell, Boundary bc) const;
  cplx det2(int ell, Boundary bc) const;
  DirichletSideEntries dirichlet_entries(int ell) const;
  NeumannSideEntries neumann_entries(int ell) const;
  ModeData mode_data(int ell) const;

 private:
  RadialPotential2D V_;
  SpectralPoint pt_;
  NystromPlan plan_;
  PotentialSamples samples_;
  double ode_tol_;
};

cplx mode_bs_det2(int ell, Boundary bc, const RadialPotential2D& V, const SpectralPoint& pt,
                  const Discretization& disc = {});
cplx boundary_bs_entry(int ell, const RadialPotential2D& V, const SpectralPoint& pt, const Discretization& disc = {});
cplx dtn_difference_entry(int ell, const RadialPotential2D& V, const SpectralPoint& pt,
                          const Discretization& disc = {});
cplx trace_T2_mode(int ell, const RadialPotential2D& V, const SpectralPoint& pt, const Discretization& disc = {});

}  // namespace detlab
