#include "detlab/disk/assembly.hpp"

#include <cmath>
#include <limits>

#include "detlab/numerics/errors.hpp"

namespace detlab {

namespace {

constexpr double fit_floor = 1e-13;
constexpr int fit_window = 10;

void check_options(const AssemblyOptions& o) {
  if (o.l_max < 0) throw ParameterError("mode assembly: l_max must be non-negative");
  check_mode_index(o.l_max);
  if (!(o.tolerance >= 1e-12 && o.tolerance <= 1e-2)) throw ParameterError("mode assembly: tolerance out of range");
}

}  // namespace

ModeSumResult sum_modes(const std::vector<cplx>& factors, double tolerance) {
  if (factors.empty()) throw ParameterError("sum_modes: no modes");
  ModeSumResult r;
  r.l_max = static_cast<int>(factors.size()) - 1;
  cplx p = factors[0];
  for (std::size_t l = 1; l < factors.size(); ++l) p *= factors[l] * factors[l];
  r.partial = p;
  ensure_finite(p, "sum_modes");

  // least squares for log|log f_l| = log C - alpha log l over the last modes
  // still above roundoff
  std::vector<double> xs, ys;
  for (int l = r.l_max; l >= 1 && static_cast<int>(xs.size()) < fit_window; --l) {
    const double t = std::abs(std::log(factors[static_cast<std::size_t>(l)]));
    if (t > fit_floor) {
      xs.push_back(std::log(static_cast<double>(l)));
      ys.push_back(std::log(t));
    }
  }
  r.fit_points = static_cast<int>(xs.size());
  double tail_log = 0.0;
  if (xs.size() >= 3) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= xs.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxx > 0 ? sxy / sxx : 0.0;
    r.fit_exponent = -slope;
    r.fit_constant = std::exp(my - slope * mx);
    if (r.fit_exponent > 1.0)
      tail_log = 2.0 * r.fit_constant * std::pow(r.l_max + 0.5, 1.0 - r.fit_exponent) / (r.fit_exponent - 1.0);
    else
      tail_log = std::numeric_limits<double>::infinity();
  } else if (!xs.empty()) {
    // too few resolved modes to fit: bound by the last one, doubled per side
    tail_log = 4.0 * std::exp(ys.front());
  }
  r.tail_estimate = std::isfinite(tail_log) ? std::abs(p) * std::expm1(tail_log) : tail_log;
  r.total = p;
  r.converged = std::isfinite(r.tail_estimate) && r.tail_estimate <= tolerance * std::abs(p);
  return r;
}

Theorem42Result assemble_theorem_4_2(const DiskModeSolver& solver, const AssemblyOptions& opts) {
  check_options(opts);
  Theorem42Result res;
  res.modes = map_modes<ModeData>(opts.l_max, opts.threads, [&](int l) { return solver.mode_data(l); });

  std::vector<cplx> f1, f2, f3;
  cplx tau_sum{};
  for (const ModeData& m : res.modes) {
    f1.push_back(m.det2_neumann / m.det2_dirichlet);
    f2.push_back((1.0 - m.b) * std::exp(m.b + m.tau));
    f3.push_back(m.d * std::exp(1.0 - m.d + m.tau));
    tau_sum += (m.ell == 0 ? 1.0 : 2.0) * m.tau;
    const double dev = std::abs(m.d - 1.0);
    res.dtn_hs_sum += (m.ell == 0 ? 1.0 : 2.0) * dev * dev;
  }
  res.det_ratio = sum_modes(f1, opts.tolerance);
  res.boundary_form = sum_modes(f2, opts.tolerance);
  res.dtn_form = sum_modes(f3, opts.tolerance);

  int run = 0;
  for (const ModeData& m : res.modes) {
    run = std::abs(m.d - 1.0) < 1e-8 ? run + 1 : 0;
    if (run == 3) {
      res.truncation_mode = m.ell - 2;
      break;
    }
  }
  return res;
}

Eq437Result assemble_eq_4_37(const DiskModeSolver& solver, const AssemblyOptions& opts) {
  check_options(opts);
  struct Entry {
    cplx ratio;
    NeumannSideEntries e;
  };
  std::vector<Entry> entries = map_modes<Entry>(opts.l_max, opts.threads, [&](int l) {
    Entry en;
    en.ratio = solver.det2(l, Boundary::dirichlet) / solver.det2(l, Boundary::neumann);
    en.e = solver.neumann_entries(l);
    return en;
  });
  Eq437Result res;
  std::vector<cplx> f1, f2;
  for (const Entry& en : entries) {
    f1.push_back(en.ratio);
    f2.push_back((1.0 + en.e.b) * std::exp(-en.e.b - en.e.tau));
    res.b_prime.push_back(en.e.b);
    res.tau_prime.push_back(en.e.tau);
  }
  res.det_ratio = sum_modes(f1, opts.tolerance);
  res.boundary_form = sum_modes(f2, opts.tolerance);
  return res;
}

}  // namespace detlab
