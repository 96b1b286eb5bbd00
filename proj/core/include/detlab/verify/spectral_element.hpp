#pragma once

#include <vector>

#include "detlab/disk/radial_potential.hpp"
#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/spectral_point.hpp"
#include "detlab/numerics/types.hpp"

namespace detlab {

// Continuous Galerkin discretization with Gauss-Lobatto element bases and a
// consistent (Gauss-Legendre) mass matrix. Used as an oracle only.
struct SpectralElementOptions {
  double element_size = 0.5;
  int order = 10;
};

// Eigenvalues in (z_lo, z_hi) of -u'' + V u on (0, length) with the given
// condition at 0 and u(length) = 0. V must be real.
std::vector<double> halfline_sem_eigenvalues(const Potential1D& V, Boundary bc, double length, double z_lo,
                                             double z_hi, const SpectralElementOptions& opts = {});

// Eigenvalues in (z_lo, z_hi) of mode ell on the disk of radius V.R with the
// given condition at R. V must be real.
std::vector<double> radial_sem_eigenvalues(const RadialPotential2D& V, int ell, Boundary bc, double z_lo, double z_hi,
                                           const SpectralElementOptions& opts = {});

// Per-mode boundary quantities from discrete solves: boundary fluxes are taken
// in the variationally consistent form R u'(R) = a(u, phi_R) - (f, phi_R).
struct ModeOracle {
  cplx m;               // -u'(R)/u(R)
  cplx m0;
  cplx b;               // R h'(R), h = (H^D - z)^{-1} V c_N
  cplx tau;             // R p'(R), p = (H0^D - z)^{-1} V h
  cplx dtn_difference;  // as b with c_N replaced by d_r G0^D(R, .)
};

ModeOracle radial_sem_mode_oracle(const RadialPotential2D& V, int ell, const SpectralPoint& pt,
                                  const SpectralElementOptions& opts = {});

}  // namespace detlab
