#include "detlab/halfline/volterra.hpp"

#include "detlab/halfline/birman_schwinger.hpp"
#include "detlab/numerics/errors.hpp"
#include "detlab/numerics/matrix.hpp"
#include "detlab/numerics/nystrom.hpp"

namespace detlab {

namespace {

// sin(k(x - y))/k exp(ik(y - x)) for y >= x
cplx reduced_kernel(cplx k, double x, double y) {
  return (1.0 - std::exp(2.0 * imag_unit * k * (y - x))) / (2.0 * imag_unit * k);
}

}  // namespace

JostIntegralSolution jost_volterra(const Potential1D& V, const SpectralPoint& pt, const QuadratureGrid& grid) {
  const NystromPlan plan = halfline_plan(grid);
  const std::size_t n = grid.size();
  const auto& x = grid.nodes();
  const auto& w = grid.weights();
  const auto& abs = plan.abscissae();
  const cplx k = pt.sqrt_z;
  const std::size_t m = static_cast<std::size_t>(plan.sub_nodes());

  std::vector<cplx> pot(n);
  for (std::size_t j = 0; j < n; ++j) pot[j] = V(x[j]);

  ComplexMatrix sys = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = grid.panel_of(i);
    const Panel& pan = grid.panels()[own];
    const RowCorrection& rc = plan.row(i);
    for (std::size_t q = m; q < rc.points.size(); ++q) {
      const double y = abs[rc.points[q]];
      const cplx c = reduced_kernel(k, x[i], y) * V(y) * rc.weights[q];
      for (std::size_t jj = 0; jj < pan.count; ++jj) sys(i, pan.first + jj) += c * rc.basis[q * pan.count + jj];
    }
    for (std::size_t j = pan.first + pan.count; j < n; ++j) sys(i, j) += reduced_kernel(k, x[i], x[j]) * pot[j] * w[j];
  }
  std::vector<cplx> ones(n, cplx{1.0, 0.0});
  std::vector<cplx> F = solve_linear(sys, ones);

  JostIntegralSolution sol;
  sol.grid = grid;
  sol.values.resize(n);
  cplx sin_part = 0.0, cos_part = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx e2 = std::exp(2.0 * imag_unit * k * x[j]);
    sol.values[j] = F[j] * std::exp(imag_unit * k * x[j]);
    sin_part += w[j] * pot[j] * (e2 - 1.0) / (2.0 * imag_unit) * F[j];
    cos_part += w[j] * pot[j] * 0.5 * (e2 + 1.0) * F[j];
  }
  sol.f0 = ensure_finite(1.0 + sin_part / k, "jost_volterra");
  sol.fp0 = ensure_finite(imag_unit * k * (1.0 + imag_unit * cos_part / k), "jost_volterra");
  return sol;
}

cplx jost_integral_form(const JostIntegralSolution& sol, const SpectralPoint& pt, Boundary bc) {
  return bc == Boundary::dirichlet ? sol.f0 : sol.fp0 / (imag_unit * pt.sqrt_z);
}

}  // namespace detlab
