#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "detlab/disk/radial_potential.hpp"
#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/discretization.hpp"
#include "detlab/verify/spectral_element.hpp"

namespace detlab {

enum class ScanProblem { halfline_dirichlet, halfline_neumann, disk_mode };

std::string_view to_string(ScanProblem p) noexcept;

struct ScanRange {
  double z_lo = -10.0;
  double z_hi = -1e-3;
  int n_samples = 200;
};

struct EigenScanResult {
  ScanProblem problem = ScanProblem::halfline_neumann;
  Boundary bc = Boundary::neumann;
  int ell = 0;
  std::vector<std::pair<double, double>> brackets;  // one per accepted root
  std::vector<double> roots;
  std::vector<double> root_residuals;  // |f(root)| over the bracket's |f| scale
  std::vector<double> oracle_values;   // all oracle eigenvalues in range
  std::vector<double> rejected_poles;  // sign changes that were poles
  bool ill_conditioned = false;        // a pole sits next to a root
  std::vector<std::string> notes;
};

// Half-line scans sample det(I + K_D) (halfline_dirichlet) or the boundary
// scalar det_N / det_D (halfline_neumann). V must be real.
EigenScanResult eigenvalue_scan(const Potential1D& V, ScanProblem problem, const ScanRange& range,
                                const Discretization& disc = {});

// Mode ell on the disk: 1 - b_l for Neumann, det2_D(l) for Dirichlet.
EigenScanResult eigenvalue_scan(const RadialPotential2D& V, int ell, Boundary bc, const ScanRange& range,
                                const Discretization& disc = {});

// Nearest oracle value for each root; NaN when the oracle list is empty.
std::vector<double> nearest_oracle(const EigenScanResult& r);

inline constexpr double root_step_tolerance = 1e-9;

}  // namespace detlab
