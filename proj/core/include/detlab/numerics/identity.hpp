#pragma once

#include <string>
#include <utility>
#include <vector>

#include "detlab/numerics/discretization.hpp"
#include "detlab/numerics/matrix.hpp"
#include "detlab/numerics/spectral_point.hpp"

namespace detlab {

// One side of an identity and the computational route that produced it.
struct IdentitySide {
  std::string name;
  cplx value;
  std::string pipeline;
};

struct IdentityReport {
  std::string name;
  SpectralPoint point{};
  std::vector<IdentitySide> sides;
  double abs_residual = 0.0;  // max pairwise |difference|
  double rel_residual = 0.0;  // abs_residual / max |side|
  double tolerance = 0.0;
  Discretization discretization{};
  bool converged = false;
  std::vector<std::pair<std::string, double>> diagnostics;
  std::vector<std::string> notes;
};

// Fills residuals and the convergence flag from the sides. `healthy` lets the
// caller fold upstream failures (unconverged refinement) into the flag.
void finalize_report(IdentityReport& report, double tolerance, bool healthy = true);

// det(I_N - AB) against det(I_M - BA).
IdentityReport commuted_det_identity_check(const ComplexMatrix& a, const ComplexMatrix& b, double tolerance = 1e-12);

}  // namespace detlab
