#include "detlab/verify/identities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detlab/disk/assembly.hpp"
#include "detlab/halfline/birman_schwinger.hpp"
#include "detlab/halfline/boundary.hpp"
#include "detlab/halfline/solutions.hpp"
#include "detlab/halfline/volterra.hpp"
#include "detlab/numerics/errors.hpp"
#include "detlab/numerics/refinement.hpp"

namespace detlab {

namespace {

void check_tolerance(double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-2)) throw ParameterError("identity tolerance must lie in [1e-12, 1e-2]");
}

RefinementPolicy det_policy(const Discretization& disc) {
  return RefinementPolicy{0.1 * disc.tolerance, disc.max_refinements};
}

void add_refinement_diagnostics(IdentityReport& rep, const std::string& prefix, const DeterminantResult& r) {
  rep.diagnostics.emplace_back(prefix + "_error_estimate", r.error_estimate);
  rep.diagnostics.emplace_back(prefix + "_nodes", static_cast<double>(r.grid_sizes.back()));
  if (!r.converged) rep.notes.push_back(prefix + ": refinement did not reach the requested tolerance");
}

// interior node nearest x = 1 (or the middle of the grid for short ranges)
double wronskian_abscissa(const QuadratureGrid& grid) {
  const double target = std::min(1.0, 0.5 * grid.right());
  double best = grid.nodes().front();
  for (double x : grid.nodes())
    if (std::abs(x - target) < std::abs(best - target)) best = x;
  return best;
}

}  // namespace

IdentityReport verify_jost_pais(const Potential1D& V, const SpectralPoint& pt, Boundary bc, const Discretization& disc) {
  check_tolerance(disc.tolerance);
  IdentityReport rep;
  rep.name = bc == Boundary::dirichlet ? "jost_pais_dirichlet" : "jost_pais_neumann";
  rep.point = pt;
  rep.discretization = disc;
  const cplx ik = imag_unit * pt.sqrt_z;

  const DeterminantResult det = fredholm_det_halfline(V, pt, bc, det_policy(disc), disc);
  rep.sides.push_back({"nystrom_det", det.value, pipeline::nystrom});
  add_refinement_diagnostics(rep, "nystrom_det", det);

  {
    const QuadratureGrid grid = halfline_grid(V, disc, 0);
    const SolutionSample f = jost_solution(V, pt, grid, disc.ode_tolerance);
    const double xw = wronskian_abscissa(grid);
    cplx w;
    if (bc == Boundary::dirichlet) {
      w = wronskian(f, regular_solution_dirichlet(V, pt, grid, disc.ode_tolerance), xw);
    } else {
      w = -wronskian(f, regular_solution_neumann(V, pt, grid, disc.ode_tolerance), xw) / ik;
    }
    rep.sides.push_back({"wronskian_form", w, pipeline::ode_wronskian});
    rep.diagnostics.emplace_back("wronskian_abscissa", xw);
  }
  {
    auto [f0, fp0] = jost_boundary_values(V, pt, disc.ode_tolerance);
    rep.sides.push_back({"jost_boundary_form", bc == Boundary::dirichlet ? f0 : fp0 / ik, pipeline::ode_jost});
  }
  {
    const JostIntegralSolution sol = jost_volterra(V, pt, halfline_grid(V, disc, 1));
    rep.sides.push_back({"volterra_integral_form", jost_integral_form(sol, pt, bc), pipeline::volterra});
  }
  finalize_report(rep, disc.tolerance, det.converged);
  return rep;
}

IdentityReport verify_ratio_1d(const Potential1D& V, const SpectralPoint& pt, const Discretization& disc) {
  check_tolerance(disc.tolerance);
  IdentityReport rep;
  rep.name = "ratio_1d";
  rep.point = pt;
  rep.discretization = disc;

  const DeterminantResult dn = fredholm_det_halfline(V, pt, Boundary::neumann, det_policy(disc), disc);
  const DeterminantResult dd = fredholm_det_halfline(V, pt, Boundary::dirichlet, det_policy(disc), disc);
  if (std::abs(dd.value) < 1e-12) throw PoleError("ratio_1d: z is at a Dirichlet eigenvalue", std::abs(dd.value));
  rep.sides.push_back({"det_ratio", dn.value / dd.value, pipeline::nystrom});
  add_refinement_diagnostics(rep, "det_neumann", dn);
  add_refinement_diagnostics(rep, "det_dirichlet", dd);

  const DeterminantResult bs = boundary_scalar_1d_refined(V, pt, det_policy(disc), disc);
  rep.sides.push_back({"boundary_scalar", bs.value, pipeline::boundary_resolvent});
  add_refinement_diagnostics(rep, "boundary_scalar", bs);

  const cplx md = m_function(V, pt, Boundary::dirichlet, disc.ode_tolerance);
  rep.sides.push_back({"m_ratio_D", md / free_m_function(pt, Boundary::dirichlet), pipeline::ode_jost});

  const JostIntegralSolution sol = jost_volterra(V, pt, halfline_grid(V, disc, 1));
  if (std::abs(sol.fp0) < 1e-12 * std::abs(pt.sqrt_z) * std::abs(sol.f0))
    throw PoleError("ratio_1d: z is at a Neumann eigenvalue", std::abs(sol.fp0));
  const cplx mn = -sol.f0 / sol.fp0;
  rep.sides.push_back({"m_ratio_N", free_m_function(pt, Boundary::neumann) / mn, pipeline::volterra});

  finalize_report(rep, disc.tolerance, dn.converged && dd.converged && bs.converged);
  return rep;
}

namespace {

void add_sum_diagnostics(IdentityReport& rep, const std::string& prefix, const ModeSumResult& s) {
  rep.diagnostics.emplace_back(prefix + "_tail", s.tail_estimate);
  rep.diagnostics.emplace_back(prefix + "_fit_exponent", s.fit_exponent);
}

double relative_tail(const ModeSumResult& s) {
  return s.tail_estimate / std::max(std::abs(s.partial), 1e-300);
}

}  // namespace

IdentityReport verify_theorem_4_2(const RadialPotential2D& V, const SpectralPoint& pt, const Discretization& disc,
                                  const DiskVerifyOptions& opts) {
  check_tolerance(disc.tolerance);
  IdentityReport rep;
  rep.name = "theorem_4_2";
  rep.point = pt;
  rep.discretization = disc;

  const DiskModeSolver solver(V, pt, disc, opts.level);
  const Theorem42Result r = assemble_theorem_4_2(solver, AssemblyOptions{disc.l_max, disc.tolerance, opts.threads});
  rep.sides.push_back({"Q1", r.det_ratio.total, pipeline::mode_nystrom});
  rep.sides.push_back({"Q2", r.boundary_form.total, pipeline::mode_boundary});
  rep.sides.push_back({"Q3", r.dtn_form.total, pipeline::mode_ode});
  add_sum_diagnostics(rep, "Q1", r.det_ratio);
  add_sum_diagnostics(rep, "Q2", r.boundary_form);
  add_sum_diagnostics(rep, "Q3", r.dtn_form);

  std::vector<cplx> tau_factors;
  for (const ModeData& m : r.modes) tau_factors.push_back(std::exp(m.tau));
  const ModeSumResult tau_fit = sum_modes(tau_factors, disc.tolerance);
  rep.diagnostics.emplace_back("tau_fit_exponent", tau_fit.fit_exponent);
  rep.diagnostics.emplace_back("dtn_hs_sum", r.dtn_hs_sum);
  rep.diagnostics.emplace_back("truncation_mode", r.truncation_mode);

  const double tail = std::max({relative_tail(r.det_ratio), relative_tail(r.boundary_form), relative_tail(r.dtn_form)});
  rep.diagnostics.emplace_back("relative_tail", tail);
  finalize_report(rep, disc.tolerance + tail, std::isfinite(tail));
  return rep;
}

IdentityReport verify_eq_4_37(const RadialPotential2D& V, const SpectralPoint& pt, const Discretization& disc,
                              const DiskVerifyOptions& opts) {
  check_tolerance(disc.tolerance);
  IdentityReport rep;
  rep.name = "eq_4_37";
  rep.point = pt;
  rep.discretization = disc;

  const DiskModeSolver solver(V, pt, disc, opts.level);
  const AssemblyOptions ao{disc.l_max, disc.tolerance, opts.threads};
  const Eq437Result r = assemble_eq_4_37(solver, ao);
  rep.sides.push_back({"det_ratio_D_over_N", r.det_ratio.total, pipeline::mode_nystrom});
  rep.sides.push_back({"boundary_form", r.boundary_form.total, pipeline::mode_boundary});
  add_sum_diagnostics(rep, "det_ratio", r.det_ratio);
  add_sum_diagnostics(rep, "boundary_form", r.boundary_form);

  const Theorem42Result t = assemble_theorem_4_2(solver, ao);
  rep.diagnostics.emplace_back("det_ratio_reciprocity", std::abs(r.det_ratio.total * t.det_ratio.total - 1.0));
  rep.diagnostics.emplace_back("boundary_form_reciprocity",
                               std::abs(r.boundary_form.total * t.boundary_form.total - 1.0));

  const double tail = std::max(relative_tail(r.det_ratio), relative_tail(r.boundary_form));
  rep.diagnostics.emplace_back("relative_tail", tail);
  finalize_report(rep, disc.tolerance + tail, std::isfinite(tail));
  return rep;
}

std::vector<IdentityReport> verify_mode_identities(const RadialPotential2D& V, const SpectralPoint& pt,
                                                   const Discretization& disc, const DiskVerifyOptions& opts) {
  check_tolerance(disc.tolerance);
  if (disc.l_max < 0) throw ParameterError("verify_mode_identities: l_max must be non-negative");
  check_mode_index(disc.l_max);
  const DiskModeSolver solver(V, pt, disc, opts.level);
  RadialOptions ro;
  ro.tol = disc.ode_tolerance;

  struct PerMode {
    cplx m, m0, n;
    DirichletSideEntries e;
  };
  const int n_modes = 2 * disc.l_max;
  // signed l = k - l_max
  std::vector<PerMode> per = map_modes<PerMode>(n_modes, opts.threads, [&](int k) {
    const int l = k - disc.l_max;
    PerMode p;
    p.m = dtn_mode(l, V, pt, ro);
    p.m0 = free_dtn_mode(l, V.R, pt, ro);
    p.n = ntd_mode(l, V, pt, ro);
    p.e = solver.dirichlet_entries(l);
    return p;
  });

  std::vector<IdentityReport> out;
  for (int k = 0; k <= n_modes; ++k) {
    const int l = k - disc.l_max;
    const PerMode& p = per[static_cast<std::size_t>(k)];
    const std::string suffix = "_l" + std::to_string(l);

    IdentityReport a;
    a.name = "ntd_dtn_reciprocity" + suffix;
    a.sides = {{"n_times_m", p.n * p.m, pipeline::mode_ode}, {"minus_one", cplx{-1.0, 0.0}, "constant"}};
    IdentityReport b;
    b.name = "dtn_difference" + suffix;
    b.sides = {{"m0_minus_m", p.m0 - p.m, pipeline::mode_ode},
               {"resolvent_form", p.e.dtn_difference, pipeline::mode_boundary}};
    IdentityReport c;
    c.name = "dtn_ratio" + suffix;
    c.sides = {{"one_minus_ratio", 1.0 - p.m / p.m0, pipeline::mode_ode},
               {"boundary_entry", p.e.b, pipeline::mode_boundary}};
    for (IdentityReport* r : {&a, &b, &c}) {
      r->point = pt;
      r->discretization = disc;
      r->diagnostics.emplace_back("ell", l);
    }
    finalize_report(a, 1e-10);
    finalize_report(b, disc.tolerance);
    finalize_report(c, disc.tolerance);
    out.push_back(std::move(a));
    out.push_back(std::move(b));
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

IdentityReport hs_report(std::string name, const SpectralPoint& pt, const Discretization& disc,
                         const std::vector<double>& norms, const std::vector<double>& exact) {
  IdentityReport rep;
  rep.name = std::move(name);
  rep.point = pt;
  rep.discretization = disc;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    rep.sides.push_back({"frobenius_level_" + std::to_string(i), cplx{norms[i], 0.0}, pipeline::nystrom});
    rep.diagnostics.emplace_back("hs_quadrature_level_" + std::to_string(i), exact[i]);
  }
  const double last = norms.back();
  const double change = std::abs(last - norms[norms.size() - 2]);
  bool cauchy = true;
  for (std::size_t i = 2; i < norms.size(); ++i)
    cauchy = cauchy && std::abs(norms[i] - norms[i - 1]) <= std::abs(norms[i - 1] - norms[i - 2]) * 1.5 + 1e-12 * last;
  rep.abs_residual = change;
  rep.rel_residual = last > 0 ? change / last : 0.0;
  rep.tolerance = hs_cauchy_tolerance;
  rep.converged = cauchy && rep.rel_residual <= hs_cauchy_tolerance;
  rep.notes.push_back("residuals are the change between the last two levels");
  return rep;
}

void check_levels(int levels) {
  if (levels < 3 || levels > 8) throw ParameterError("verify_hs_membership: levels must lie in [3, 8]");
}

}  // namespace

IdentityReport verify_hs_membership(const Potential1D& V, const SpectralPoint& pt, Boundary bc, int levels,
                                    const Discretization& disc) {
  check_levels(levels);
  std::vector<double> norms, exact;
  for (int k = 0; k < levels; ++k) {
    const BirmanSchwingerKernel K = bs_kernel(V, pt, bc, halfline_grid(V, disc, k));
    norms.push_back(K.matrix.frobenius_norm());
    exact.push_back(K.hs_norm);
  }
  return hs_report("hs_membership_halfline_" + std::string(to_string(bc)), pt, disc, norms, exact);
}

IdentityReport verify_hs_membership(const RadialPotential2D& V, int ell, const SpectralPoint& pt, Boundary bc,
                                    int levels, const Discretization& disc) {
  check_levels(levels);
  std::vector<double> norms, exact;
  for (int k = 0; k < levels; ++k) {
    const DiskModeSolver solver(V, pt, disc, k);
    const BirmanSchwingerOperator op = mode_operator(solver.free_kernel(ell, bc), solver.plan(), solver.samples());
    norms.push_back(op.matrix().frobenius_norm());
    exact.push_back(op.traces().hs_norm);
  }
  return hs_report("hs_membership_disk_l" + std::to_string(ell) + "_" + std::string(to_string(bc)), pt, disc, norms, exact);
}

}  // namespace detlab
