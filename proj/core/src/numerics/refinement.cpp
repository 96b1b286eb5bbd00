#include "detlab/numerics/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detlab/numerics/errors.hpp"

namespace detlab {

DeterminantResult refine_determinant(const RefinementLevel& level, DeterminantKind kind,
                                     const RefinementPolicy& policy) {
  if (policy.max_refinements < 0) throw ParameterError("refine_determinant: negative refinement cap");
  if (!(policy.tolerance > 0.0)) throw ParameterError("refine_determinant: tolerance must be positive");
  DeterminantResult r;
  r.kind = kind;
  for (int k = 0; k <= policy.max_refinements; ++k) {
    auto [nodes, value] = level(k);
    ensure_finite(value, "refine_determinant");
    r.grid_sizes.push_back(nodes);
    r.values_per_grid.push_back(value);
    r.value = value;
    if (k == 0) {
      // a single level carries no error information
      r.error_estimate = INFINITY;
      continue;
    }
    const cplx prev = r.values_per_grid[k - 1];
    r.error_estimate = std::abs(value - prev) / std::max(1.0, std::abs(value));
    if (r.error_estimate <= policy.tolerance) break;
  }
  r.converged = r.error_estimate <= policy.tolerance;
  return r;
}

const DeterminantResult& require_converged(const DeterminantResult& result) {
  if (!result.converged)
    throw ConvergenceError("determinant refinement did not converge (estimate " +
                               std::to_string(result.error_estimate) + ")",
                           result.values_per_grid);
  return result;
}

}  // namespace detlab
