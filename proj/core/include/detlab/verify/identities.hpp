#pragma once

#include <cstddef>
#include <vector>

#include "detlab/disk/radial_potential.hpp"
#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/discretization.hpp"
#include "detlab/numerics/identity.hpp"

namespace detlab {

// Pipeline tags carried by IdentitySide::pipeline.
namespace pipeline {
inline constexpr const char* nystrom = "nystrom";
inline constexpr const char* ode_wronskian = "ode_wronskian";
inline constexpr const char* ode_jost = "ode_jost";
inline constexpr const char* volterra = "volterra";
inline constexpr const char* boundary_resolvent = "boundary_resolvent";
inline constexpr const char* mode_nystrom = "mode_nystrom";
inline constexpr const char* mode_boundary = "mode_boundary";
inline constexpr const char* mode_ode = "mode_ode";
}  // namespace pipeline

// Jost function f(0) (Dirichlet) or f'(0)/(i sqrt z) (Neumann) four ways.
IdentityReport verify_jost_pais(const Potential1D& V, const SpectralPoint& pt, Boundary bc,
                                const Discretization& disc = {});

// det_N / det_D against the boundary scalar and both m-function ratios.
IdentityReport verify_ratio_1d(const Potential1D& V, const SpectralPoint& pt, const Discretization& disc = {});

struct DiskVerifyOptions {
  std::size_t threads = 1;
  int level = 0;  // radial grid refinement level
};

// Q1 = Q2 = Q3; the relative mode-tail estimate is added to the tolerance.
IdentityReport verify_theorem_4_2(const RadialPotential2D& V, const SpectralPoint& pt, const Discretization& disc = {},
                                  const DiskVerifyOptions& opts = {});

// prod det2_D / det2_N against the Neumann-side boundary form. Diagnostics
// carry the reciprocity defects against the Dirichlet-side products.
IdentityReport verify_eq_4_37(const RadialPotential2D& V, const SpectralPoint& pt, const Discretization& disc = {},
                              const DiskVerifyOptions& opts = {});

// For every l in [-l_max, l_max]: n m = -1 (tolerance 1e-10), m0 - m against
// its resolvent form and 1 - m/m0 against b (tolerance disc.tolerance).
std::vector<IdentityReport> verify_mode_identities(const RadialPotential2D& V, const SpectralPoint& pt,
                                                   const Discretization& disc = {}, const DiskVerifyOptions& opts = {});

// Frobenius norms of the discretized Birman-Schwinger matrix over successive
// grid doublings. Sides hold the norms; the residuals are the last change.
IdentityReport verify_hs_membership(const Potential1D& V, const SpectralPoint& pt, Boundary bc, int levels,
                                    const Discretization& disc = {});
IdentityReport verify_hs_membership(const RadialPotential2D& V, int ell, const SpectralPoint& pt, Boundary bc,
                                    int levels, const Discretization& disc = {});

inline constexpr double hs_cauchy_tolerance = 1e-4;

}  // namespace detlab
