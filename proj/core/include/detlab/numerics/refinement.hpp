#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "detlab/numerics/types.hpp"

namespace detlab {

enum class DeterminantKind { det1, det2 };

struct RefinementPolicy {
  double tolerance = 1e-8;
  int max_refinements = 4;
};

struct DeterminantResult {
  cplx value;
  DeterminantKind kind = DeterminantKind::det1;
  std::vector<std::size_t> grid_sizes;
  std::vector<cplx> values_per_grid;
  double error_estimate = 0.0;
  bool converged = false;
};

// Level k returns (node count, value). Levels are evaluated in order until two
// successive values agree to the policy tolerance or the cap is reached.
using RefinementLevel = std::function<std::pair<std::size_t, cplx>(int level)>;

DeterminantResult refine_determinant(const RefinementLevel& level, DeterminantKind kind,
                                     const RefinementPolicy& policy);

// Throws ConvergenceError carrying the sequence when !result.converged.
const DeterminantResult& require_converged(const DeterminantResult& result);

}  // namespace detlab
