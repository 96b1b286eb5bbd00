#include "detlab/disk/modes.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "detlab/numerics/errors.hpp"

namespace detlab {

namespace {

void check_near_zero(const ScaledValue& a, const ScaledValue& b, double R, int ell, const char* what) {
  const double scale = std::max(std::abs(a.mantissa), R * std::abs(b.mantissa) * std::exp(b.log_scale - a.log_scale));
  if (std::abs(a.mantissa) <= 1e-12 * scale)
    throw SpectrumProximityError(std::string(what) + ": mode " + std::to_string(ell) + " is at an eigenvalue", ell);
}

}  // namespace

cplx dtn_mode(int ell, const RadialPotential2D* V, double R, const SpectralPoint& pt, const RadialOptions& opts) {
  RadialSolution s = radial_regular_solution(ell, V, R, pt, {}, opts);
  check_near_zero(s.u_R, s.du_R, R, ell, "dtn_mode");
  const cplx m = -s.du_R.mantissa / s.u_R.mantissa * std::exp(s.du_R.log_scale - s.u_R.log_scale);
  ensure_finite(m, "dtn_mode");
  return m;
}

cplx dtn_mode(int ell, const RadialPotential2D& V, const SpectralPoint& pt, const RadialOptions& opts) {
  return dtn_mode(ell, &V, V.R, pt, opts);
}

cplx free_dtn_mode(int ell, double R, const SpectralPoint& pt, const RadialOptions& opts) {
  return dtn_mode(ell, nullptr, R, pt, opts);
}

cplx ntd_mode(int ell, const RadialPotential2D& V, const SpectralPoint& pt, const RadialOptions& opts) {
  RadialOptions o = opts;
  o.launch_fraction = 0.5 * opts.launch_fraction;
  RadialSolution s = radial_regular_solution(ell, &V, V.R, pt, {}, o);
  ScaledValue du_over_r{s.du_R.mantissa / V.R, s.du_R.log_scale};
  check_near_zero(du_over_r, s.u_R, V.R, ell, "ntd_mode");
  const cplx n = s.u_R.mantissa / s.du_R.mantissa * std::exp(s.u_R.log_scale - s.du_R.log_scale);
  ensure_finite(n, "ntd_mode");
  return n;
}

cplx radial_green_kernel(int ell, Boundary bc, const RadialPotential2D* V, double R, const SpectralPoint& pt,
                         double r, double s, const RadialOptions& opts) {
  if (!(r > 0.0 && r <= R && s > 0.0 && s <= R)) throw ParameterError("radial_green_kernel: radii must lie in (0, R]");
  const double lo = std::min(r, s);
  const double hi = std::max(r, s);
  std::vector<double> pts{lo};
  if (hi > lo) pts.push_back(hi);
  RadialSolution reg = radial_regular_solution(ell, V, R, pt, pts, opts);
  RadialSolution out = radial_boundary_solution(ell, V, R, pt, bc, pts, opts);
  // C = -R (u_reg u_bc' - u_reg' u_bc)(R)
  const ScaledValue c = bc == Boundary::dirichlet ? ScaledValue{-R * reg.u_R.mantissa, reg.u_R.log_scale}
                                                  : ScaledValue{R * reg.du_R.mantissa, reg.du_R.log_scale};
  if (bc == Boundary::dirichlet)
    check_near_zero(reg.u_R, reg.du_R, R, ell, "radial_green_kernel");
  else
    check_near_zero(ScaledValue{reg.du_R.mantissa / R, reg.du_R.log_scale}, reg.u_R, R, ell, "radial_green_kernel");
  const ScaledValue& a = reg.u.front();
  const ScaledValue& b = out.u.back();
  const cplx g = a.mantissa * b.mantissa / c.mantissa * std::exp(a.log_scale + b.log_scale - c.log_scale);
  ensure_finite(g, "radial_green_kernel");
  return g;
}

DiskModeSolver::DiskModeSolver(const RadialPotential2D& V, const SpectralPoint& pt, const Discretization& disc,
                               int level)
    : V_(V), pt_(pt), plan_(disk_plan(disk_grid(V, disc, level))), samples_(sample_potential(V, plan_)),
      ode_tol_(disc.ode_tolerance) {}

FreeModeKernel DiskModeSolver::free_kernel(int ell, Boundary bc) const {
  return FreeModeKernel(ell, bc, pt_, plan_, V_.R, ode_tol_);
}

cplx DiskModeSolver::det2(int ell, Boundary bc) const {
  const FreeModeKernel free = free_kernel(ell, bc);
  const cplx d = mode_operator(free, plan_, samples_).det2();
  ensure_finite(d, "mode_bs_det2");
  return d;
}

DirichletSideEntries DiskModeSolver::dirichlet_entries(int ell) const {
  return dirichlet_side_entries(free_kernel(ell, Boundary::dirichlet), plan_, samples_);
}

NeumannSideEntries DiskModeSolver::neumann_entries(int ell) const {
  return neumann_side_entries(free_kernel(ell, Boundary::neumann), plan_, samples_);
}

ModeData DiskModeSolver::mode_data(int ell) const {
  RadialOptions opts;
  opts.tol = ode_tol_;
  ModeData md;
  md.ell = ell;
  md.m = dtn_mode(ell, V_, pt_, opts);
  md.m0 = free_dtn_mode(ell, V_.R, pt_, opts);
  md.d = md.m / md.m0;
  const DirichletSideEntries e = dirichlet_entries(ell);
  md.b = e.b;
  md.tau = e.tau;
  md.dtn_difference = e.dtn_difference;
  md.det2_dirichlet = det2(ell, Boundary::dirichlet);
  md.det2_neumann = det2(ell, Boundary::neumann);
  return md;
}

cplx mode_bs_det2(int ell, Boundary bc, const RadialPotential2D& V, const SpectralPoint& pt,
                  const Discretization& disc) {
  return DiskModeSolver(V, pt, disc).det2(ell, bc);
}

cplx boundary_bs_entry(int ell, const RadialPotential2D& V, const SpectralPoint& pt, const Discretization& disc) {
  return DiskModeSolver(V, pt, disc).dirichlet_entries(ell).b;
}

cplx dtn_difference_entry(int ell, const RadialPotential2D& V, const SpectralPoint& pt,
                          const Discretization& disc) {
  return DiskModeSolver(V, pt, disc).dirichlet_entries(ell).dtn_difference;
}

cplx trace_T2_mode(int ell, const RadialPotential2D& V, const SpectralPoint& pt, const Discretization& disc) {
  return DiskModeSolver(V, pt, disc).dirichlet_entries(ell).tau;
}

}  // namespace detlab
