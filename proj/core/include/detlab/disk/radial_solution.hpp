#pragma once

#include <span>
#include <vector>

#include "detlab/disk/radial_potential.hpp"
#include "detlab/numerics/spectral_point.hpp"
#include "detlab/numerics/types.hpp"

namespace detlab {

inline constexpr int max_mode_index = 512;
inline constexpr double default_launch_fraction = 1e-6;

// Solution of -u'' - u'/r + (l^2/r^2 + V - z) u = 0 sampled at increasing
// radii, in scaled form (values of order r^{|l|} over- and underflow).
struct RadialSolution {
  std::vector<double> r;
  std::vector<ScaledValue> u;
  std::vector<ScaledValue> du;
  ScaledValue u_R;
  ScaledValue du_R;
};

struct RadialOptions {
  double tol = 1e-12;
  double launch_fraction = default_launch_fraction;
};

// Regular at 0, u ~ r^{|l|}. Launched at r0 = launch_fraction * R from the
// two-term Frobenius expansion; points below r0 take the expansion directly.
// V == nullptr means the free equation.
RadialSolution radial_regular_solution(int ell, const RadialPotential2D* V, double R, const SpectralPoint& pt,
                                       std::span<const double> points = {}, const RadialOptions& opts = {});

RadialSolution radial_regular_solution(int ell, const RadialPotential2D& V, const SpectralPoint& pt,
                                       std::span<const double> points = {}, const RadialOptions& opts = {});

// Solution with u(R) = 0, u'(R) = 1 (Dirichlet) or u(R) = 1, u'(R) = 0
// (Neumann), integrated inward.
RadialSolution radial_boundary_solution(int ell, const RadialPotential2D* V, double R, const SpectralPoint& pt,
                                        Boundary bc, std::span<const double> points, const RadialOptions& opts = {});

void check_mode_index(int ell);

}  // namespace detlab
