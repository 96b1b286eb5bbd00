#include "detlab/halfline/birman_schwinger.hpp"

#include <algorithm>

#include "detlab/halfline/green.hpp"
#include "detlab/halfline/solutions.hpp"
#include "detlab/numerics/errors.hpp"

namespace detlab {

int sub_nodes_for(int nodes_per_panel) { return std::max(nodes_per_panel, 12); }

NystromPlan halfline_plan(const QuadratureGrid& grid) {
  return NystromPlan(grid, sub_nodes_for(static_cast<int>(grid.panels().front().count)));
}

BirmanSchwingerOperator halfline_operator(const Potential1D& V, const SpectralPoint& pt, Boundary bc,
                                          const NystromPlan& plan) {
  const std::vector<cplx> pot = plan.sample(V.eval);
  std::vector<cplx> u(plan.size()), v(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const cplx vi = pot[plan.node_point(i)];
    u[i] = factor_u(vi);
    v[i] = factor_v(vi);
  }
  return BirmanSchwingerOperator(plan, free_kernel_table(bc, pt, plan), u, v, pot);
}

BirmanSchwingerKernel bs_kernel(const Potential1D& V, const SpectralPoint& pt, Boundary bc, const QuadratureGrid& grid) {
  if (grid.left() < 0.0 || grid.right() > V.x_max * (1.0 + 1e-12))
    throw ParameterError("bs_kernel: grid must cover (0, x_max)");
  NystromPlan plan = halfline_plan(grid);
  BirmanSchwingerOperator op = halfline_operator(V, pt, bc, plan);
  BirmanSchwingerKernel k;
  k.matrix = op.matrix();
  k.bc = bc;
  k.point = pt;
  k.grid = grid;
  k.trace = op.traces().trace;
  k.trace_square = op.traces().trace_square;
  k.hs_norm = op.traces().hs_norm;
  return k;
}

cplx fredholm_det_halfline_at(const Potential1D& V, const SpectralPoint& pt, Boundary bc, const QuadratureGrid& grid) {
  NystromPlan plan = halfline_plan(grid);
  return halfline_operator(V, pt, bc, plan).det();
}

DeterminantResult fredholm_det_halfline(const Potential1D& V, const SpectralPoint& pt, Boundary bc,
                                        const RefinementPolicy& policy, const Discretization& disc) {
  Discretization d = disc;
  d.x_max = V.x_max;
  return refine_determinant(
      [&](int level) {
        QuadratureGrid grid = halfline_grid(V, d, level);
        return std::pair<std::size_t, cplx>{grid.size(), fredholm_det_halfline_at(V, pt, bc, grid)};
      },
      DeterminantKind::det1, policy);
}

}  // namespace detlab
