#include "detlab/verify/eigen_scan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "detlab/disk/modes.hpp"
#include "detlab/halfline/birman_schwinger.hpp"
#include "detlab/halfline/boundary.hpp"
#include "detlab/halfline/solutions.hpp"
#include "detlab/halfline/spectral_point.hpp"
#include "detlab/numerics/errors.hpp"

namespace detlab {

std::string_view to_string(ScanProblem p) noexcept {
  switch (p) {
    case ScanProblem::halfline_dirichlet: return "halfline_D";
    case ScanProblem::halfline_neumann: return "halfline_N";
    case ScanProblem::disk_mode: return "disk_mode";
  }
  return "unknown";
}

namespace {

constexpr int scan_level = 1;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

using Sampler = std::function<cplx(double)>;

void check_range(const ScanRange& r) {
  if (!(r.z_lo < r.z_hi) || !(r.z_hi < 0.0)) throw ParameterError("eigenvalue_scan: need z_lo < z_hi < 0");
  if (r.n_samples < 3 || r.n_samples > 100000) throw ParameterError("eigenvalue_scan: n_samples out of range");
}

// Real part of f; NaN when f could not be evaluated (exact pole).
double real_sample(const Sampler& f, double z, double& imag_ratio) {
  try {
    const cplx v = f(z);
    if (!is_finite(v)) return nan;
    if (std::abs(v) > 0) imag_ratio = std::max(imag_ratio, std::abs(v.imag()) / std::abs(v));
    return v.real();
  } catch (const PoleError&) {
    return nan;
  } catch (const SpectrumProximityError&) {
    return nan;
  } catch (const SingularityError&) {
    return nan;
  }
}

struct Located {
  double z;
  double value;
};

Located locate(const Sampler& f, double a, double fa, double b, double fb, double& imag_ratio) {
  // bisection to a narrow bracket, then Illinois-modified regula falsi
  while (b - a > 1e-7 * std::max(1.0, std::abs(a))) {
    const double m = 0.5 * (a + b);
    const double fm = real_sample(f, m, imag_ratio);
    if (std::isnan(fm)) return {m, std::numeric_limits<double>::infinity()};
    if (fm == 0.0) return {m, 0.0};
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  int side = 0;
  double z = 0.5 * (a + b), fz = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double zn = (a * fb - b * fa) / (fb - fa);
    const double step = std::abs(zn - z);
    z = zn;
    fz = real_sample(f, z, imag_ratio);
    if (std::isnan(fz)) return {z, std::numeric_limits<double>::infinity()};
    if (fz == 0.0 || (step <= root_step_tolerance && it > 0)) break;
    if ((fz < 0) == (fa < 0)) {
      a = z;
      fa = fz;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = z;
      fb = fz;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (b - a <= root_step_tolerance) break;
  }
  return {z, fz};
}

void run_scan(const Sampler& f, const ScanRange& range, EigenScanResult& res) {
  const int n = range.n_samples;
  std::vector<double> zs(n), fs(n);
  double imag_ratio = 0.0;
  for (int i = 0; i < n; ++i) {
    zs[i] = range.z_lo + (range.z_hi - range.z_lo) * i / (n - 1);
    fs[i] = real_sample(f, zs[i], imag_ratio);
  }
  const double spacing = (range.z_hi - range.z_lo) / (n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    if (std::isnan(fs[i]) || std::isnan(fs[i + 1])) {
      // an exact pole at a sample point: record it, nothing to bracket
      if (std::isnan(fs[i])) res.rejected_poles.push_back(zs[i]);
      continue;
    }
    if (fs[i] == 0.0) {
      res.brackets.emplace_back(zs[i], zs[i]);
      res.roots.push_back(zs[i]);
      res.root_residuals.push_back(0.0);
      continue;
    }
    if ((fs[i] < 0) == (fs[i + 1] < 0)) continue;
    const double scale = std::max(std::abs(fs[i]), std::abs(fs[i + 1]));
    const Located loc = locate(f, zs[i], fs[i], zs[i + 1], fs[i + 1], imag_ratio);
    const double resid = std::abs(loc.value) / scale;
    if (resid <= 1e-8) {
      res.brackets.emplace_back(zs[i], zs[i + 1]);
      res.roots.push_back(loc.z);
      res.root_residuals.push_back(resid);
    } else {
      res.rejected_poles.push_back(loc.z);
    }
  }
  if (!std::isnan(fs.back()) && fs.back() == 0.0) {
    res.brackets.emplace_back(zs.back(), zs.back());
    res.roots.push_back(zs.back());
    res.root_residuals.push_back(0.0);
  }
  for (double p : res.rejected_poles)
    for (double r : res.roots)
      if (std::abs(p - r) <= 2.0 * spacing) res.ill_conditioned = true;
  if (res.ill_conditioned) res.notes.push_back("a pole lies within two samples of a root");
  if (imag_ratio > 1e-6) res.notes.push_back("sampled values carry an imaginary part above 1e-6 relative");
}

}  // namespace

EigenScanResult eigenvalue_scan(const Potential1D& V, ScanProblem problem, const ScanRange& range,
                                const Discretization& disc) {
  check_range(range);
  if (!V.real_valued) throw ParameterError("eigenvalue_scan: the real-axis scan needs a real potential");
  if (problem == ScanProblem::disk_mode) throw ParameterError("eigenvalue_scan: disk_mode needs a radial potential");
  EigenScanResult res;
  res.problem = problem;
  res.bc = problem == ScanProblem::halfline_dirichlet ? Boundary::dirichlet : Boundary::neumann;

  const QuadratureGrid grid = halfline_grid(V, disc, scan_level);
  const NystromPlan plan = halfline_plan(grid);
  Sampler f;
  if (problem == ScanProblem::halfline_dirichlet)
    f = [&](double z) { return halfline_operator(V, sqrt_principal(z), Boundary::dirichlet, plan).det(); };
  else
    f = [&](double z) { return boundary_scalar_1d_on(V, sqrt_principal(z), plan); };
  run_scan(f, range, res);

  SpectralElementOptions so;
  so.element_size = 0.25;
  so.order = 12;
  res.oracle_values = halfline_sem_eigenvalues(V, res.bc, V.x_max, range.z_lo, range.z_hi, so);
  return res;
}

EigenScanResult eigenvalue_scan(const RadialPotential2D& V, int ell, Boundary bc, const ScanRange& range,
                                const Discretization& disc) {
  check_range(range);
  check_mode_index(ell);
  if (!V.real_valued) throw ParameterError("eigenvalue_scan: the real-axis scan needs a real potential");
  EigenScanResult res;
  res.problem = ScanProblem::disk_mode;
  res.bc = bc;
  res.ell = ell;

  Sampler f;
  if (bc == Boundary::neumann)
    f = [&](double z) { return 1.0 - DiskModeSolver(V, sqrt_principal(z), disc).dirichlet_entries(ell).b; };
  else
    f = [&](double z) { return DiskModeSolver(V, sqrt_principal(z), disc).det2(ell, Boundary::dirichlet); };
  run_scan(f, range, res);

  SpectralElementOptions so;
  so.element_size = 0.05 * V.R;
  so.order = 12;
  res.oracle_values = radial_sem_eigenvalues(V, ell, bc, range.z_lo, range.z_hi, so);
  return res;
}

std::vector<double> nearest_oracle(const EigenScanResult& r) {
  std::vector<double> out;
  for (double z : r.roots) {
    double best = nan;
    for (double o : r.oracle_values)
      if (std::isnan(best) || std::abs(o - z) < std::abs(best - z)) best = o;
    out.push_back(best);
  }
  return out;
}

}  // namespace detlab
