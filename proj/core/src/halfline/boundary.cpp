#include "detlab/halfline/boundary.hpp"

#include "detlab/halfline/birman_schwinger.hpp"
#include "detlab/halfline/solutions.hpp"
#include "detlab/numerics/errors.hpp"

namespace detlab {

cplx boundary_scalar_1d_on(const Potential1D& V, const SpectralPoint& pt, const NystromPlan& plan) {
  const BirmanSchwingerOperator op = halfline_operator(V, pt, Boundary::dirichlet, plan);
  const auto& y = plan.grid().nodes();
  const std::size_t n = plan.size();
  const cplx k = pt.sqrt_z;

  std::vector<cplx> e(n), vc(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = std::exp(imag_unit * k * y[j]);
    // V(y) G0^N(y, 0)
    vc[j] = op.u()[j] * op.v()[j] * e[j] / (-imag_unit * k);
  }
  std::vector<cplx> psi;
  try {
    psi = op.solve(op.apply_u_green(vc));
  } catch (const SingularityError& err) {
    throw PoleError("boundary_scalar_1d: z is at a Dirichlet eigenvalue", err.pivot());
  }
  // h'(0) = int d_x G0^D(0, y) [V c - v psi](y) dy with d_x G0^D(0, y) = exp(iky)
  std::vector<cplx> integrand(n);
  for (std::size_t j = 0; j < n; ++j) integrand[j] = e[j] * (vc[j] - op.v()[j] * psi[j]);
  return ensure_finite(1.0 + integrate_nodes(plan.grid(), integrand), "boundary_scalar_1d");
}

DeterminantResult boundary_scalar_1d_refined(const Potential1D& V, const SpectralPoint& pt,
                                             const RefinementPolicy& policy, const Discretization& disc) {
  Discretization d = disc;
  d.x_max = V.x_max;
  return refine_determinant(
      [&](int level) {
        QuadratureGrid grid = halfline_grid(V, d, level);
        return std::pair<std::size_t, cplx>{grid.size(), boundary_scalar_1d_on(V, pt, halfline_plan(grid))};
      },
      DeterminantKind::det1, policy);
}

cplx boundary_scalar_1d(const Potential1D& V, const SpectralPoint& pt, const Discretization& disc) {
  Discretization d = disc;
  d.x_max = V.x_max;
  return boundary_scalar_1d_on(V, pt, halfline_plan(halfline_grid(V, d, 0)));
}

}  // namespace detlab
