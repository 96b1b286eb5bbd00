#include "detlab/disk/mode_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "detlab/disk/radial_solution.hpp"
#include "detlab/halfline/birman_schwinger.hpp"
#include "detlab/halfline/potential.hpp"
#include "detlab/numerics/errors.hpp"

namespace detlab {

QuadratureGrid disk_grid(const RadialPotential2D& V, const Discretization& disc, int level) {
  if (level < 0 || level > 12) throw ParameterError("disk_grid: level out of range");
  return gauss_legendre_panels(0.0, V.R, disc.n_panels << level, disc.nodes_per_panel, WeightKind::radial,
                               V.breakpoints);
}

NystromPlan disk_plan(const QuadratureGrid& grid) {
  if (grid.weight_kind() != WeightKind::radial) throw ParameterError("disk_plan: grid must use the radial measure");
  return NystromPlan(grid, sub_nodes_for(static_cast<int>(grid.panels().front().count)));
}

PotentialSamples sample_potential(const RadialPotential2D& V, const NystromPlan& plan) {
  PotentialSamples s;
  s.potential = plan.sample(V.eval);
  s.u.resize(plan.size());
  s.v.resize(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const cplx vi = s.potential[plan.node_point(i)];
    s.u[i] = factor_u(vi);
    s.v[i] = factor_v(vi);
  }
  return s;
}

namespace {

SemiSeparableKernel build_kernel(const RadialSolution& reg, const RadialSolution& out, double R, Boundary bc) {
  // G = u_reg(r<) u_bc(r>) / C, C = -R (u_reg u_bc' - u_reg' u_bc)(R)
  const ScaledValue& uR = reg.u_R;
  const ScaledValue& duR = reg.du_R;
  ScaledValue c = bc == Boundary::dirichlet ? ScaledValue{-R * uR.mantissa, uR.log_scale}
                                            : ScaledValue{R * duR.mantissa, duR.log_scale};
  if (std::abs(c.mantissa) < 1e-13 * std::max(std::abs(uR.mantissa), R * std::abs(duR.mantissa)))
    throw SpectrumProximityError("free mode kernel: z is at a free " + std::string(to_string(bc)) + " eigenvalue", 0);
  return SemiSeparableKernel(reg.u, out.u, c);
}

}  // namespace

FreeModeKernel::FreeModeKernel(int ell, Boundary bc, const SpectralPoint& pt, const NystromPlan& plan, double R,
                               double tol)
    : ell_(ell), bc_(bc), R_(R), kernel_({}, {}, ScaledValue{1.0, 0.0}) {
  const auto& xs = plan.abscissae();
  RadialOptions opts;
  opts.tol = tol;
  RadialSolution reg = radial_regular_solution(ell, nullptr, R, pt, xs, opts);
  RadialSolution out = radial_boundary_solution(ell, nullptr, R, pt, bc, xs, opts);
  kernel_ = build_kernel(reg, out, R, bc);

  const std::size_t n = plan.size();
  dirichlet_column_.resize(n);
  neumann_column_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const ScaledValue& u = reg.u[plan.node_point(j)];
    dirichlet_column_[j] = -u.mantissa / (R * reg.u_R.mantissa) * std::exp(u.log_scale - reg.u_R.log_scale);
    neumann_column_[j] = u.mantissa / (R * reg.du_R.mantissa) * std::exp(u.log_scale - reg.du_R.log_scale);
  }
  free_dtn_ = -reg.du_R.mantissa / reg.u_R.mantissa;
}

BirmanSchwingerOperator mode_operator(const FreeModeKernel& free, const NystromPlan& plan,
                                      const PotentialSamples& samples) {
  return BirmanSchwingerOperator(plan, free.kernel(), samples.u, samples.v, samples.potential);
}

namespace {

std::vector<cplx> node_potential(const NystromPlan& plan, const PotentialSamples& s) {
  std::vector<cplx> v(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) v[i] = s.potential[plan.node_point(i)];
  return v;
}

std::vector<cplx> times(std::span<const cplx> a, std::span<const cplx> b) {
  std::vector<cplx> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * b[i];
  return c;
}

// (H - z)^{-1} f = A f - A v (I + K)^{-1} u A f at the nodes
std::vector<cplx> perturbed_resolvent(const BirmanSchwingerOperator& op, std::span<const cplx> f,
                                      std::vector<cplx>* psi_out = nullptr) {
  std::vector<cplx> af = op.apply_green(f);
  std::vector<cplx> uaf = times(op.u(), af);
  std::vector<cplx> psi = op.solve(uaf);
  std::vector<cplx> correction = op.apply_green(times(op.v(), psi));
  for (std::size_t i = 0; i < af.size(); ++i) af[i] -= correction[i];
  if (psi_out) *psi_out = std::move(psi);
  return af;
}

cplx boundary_pairing(const QuadratureGrid& grid, double R, std::span<const cplx> a, std::span<const cplx> f) {
  return R * integrate_nodes(grid, times(a, f));
}

}  // namespace

DirichletSideEntries dirichlet_side_entries(const FreeModeKernel& free_d, const NystromPlan& plan,
                                            const PotentialSamples& samples) {
  if (free_d.bc() != Boundary::dirichlet) throw ParameterError("dirichlet_side_entries: need the Dirichlet kernel");
  const double R = free_d.radius();
  const BirmanSchwingerOperator op = mode_operator(free_d, plan, samples);
  const std::vector<cplx> pot = node_potential(plan, samples);
  const auto& a_d = free_d.dirichlet_column();
  const auto& c_n = free_d.neumann_column();
  const QuadratureGrid& grid = plan.grid();

  DirichletSideEntries e;
  try {
    // h = (H^D - z)^{-1} V c_N; d_r h(R) = int d_r G0^D(R, s) [V c_N - v psi](s)
    std::vector<cplx> g = times(pot, c_n);
    std::vector<cplx> psi;
    std::vector<cplx> h = perturbed_resolvent(op, g, &psi);
    std::vector<cplx> jump(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) jump[j] = g[j] - op.v()[j] * psi[j];
    e.b = boundary_pairing(grid, R, a_d, jump);
    e.tau = boundary_pairing(grid, R, a_d, times(pot, h));

    std::vector<cplx> gd = times(pot, a_d);
    std::vector<cplx> psi_d;
    perturbed_resolvent(op, gd, &psi_d);
    for (std::size_t j = 0; j < gd.size(); ++j) jump[j] = gd[j] - op.v()[j] * psi_d[j];
    e.dtn_difference = boundary_pairing(grid, R, a_d, jump);
  } catch (const SingularityError&) {
    throw SpectrumProximityError("mode " + std::to_string(free_d.ell()) + ": z is at a Dirichlet eigenvalue",
                                 free_d.ell());
  }
  ensure_finite(e.b, "boundary_bs_entry");
  ensure_finite(e.tau, "trace_T2_mode");
  ensure_finite(e.dtn_difference, "dtn_difference_entry");
  return e;
}

NeumannSideEntries neumann_side_entries(const FreeModeKernel& free_n, const NystromPlan& plan,
                                        const PotentialSamples& samples) {
  if (free_n.bc() != Boundary::neumann) throw ParameterError("neumann_side_entries: need the Neumann kernel");
  const double R = free_n.radius();
  const BirmanSchwingerOperator op = mode_operator(free_n, plan, samples);
  const std::vector<cplx> pot = node_potential(plan, samples);
  const auto& a_d = free_n.dirichlet_column();
  const auto& c_n = free_n.neumann_column();
  const QuadratureGrid& grid = plan.grid();

  NeumannSideEntries e;
  try {
    // G^N_V(., R) = c_N - A_N v (I + K_N)^{-1} u c_N
    std::vector<cplx> psi = op.solve(times(op.u(), c_n));
    std::vector<cplx> corr = op.apply_green(times(op.v(), psi));
    std::vector<cplx> gv(c_n.size());
    for (std::size_t j = 0; j < gv.size(); ++j) gv[j] = c_n[j] - corr[j];
    e.b = boundary_pairing(grid, R, a_d, times(pot, gv));

    std::vector<cplx> h = perturbed_resolvent(op, times(pot, c_n));
    e.tau = boundary_pairing(grid, R, a_d, times(pot, h));
  } catch (const SingularityError&) {
    throw SpectrumProximityError("mode " + std::to_string(free_n.ell()) + ": z is at a Neumann eigenvalue",
                                 free_n.ell());
  }
  ensure_finite(e.b, "neumann_side_entries");
  ensure_finite(e.tau, "neumann_side_entries");
  return e;
}

}  // namespace detlab
