#include "detlab/disk/radial_solution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "detlab/numerics/errors.hpp"
#include "detlab/numerics/ode.hpp"

namespace detlab {

namespace {

LinearSystem radial_system(int ell, const RadialPotential2D* V, cplx z) {
  const double l2 = static_cast<double>(ell) * ell;
  if (V == nullptr)
    return [l2, z](double r, const OdeVector& y) { return OdeVector{y[1], -y[1] / r + (l2 / (r * r) - z) * y[0]}; };
  return [l2, z, V](double r, const OdeVector& y) {
    return OdeVector{y[1], -y[1] / r + (l2 / (r * r) + V->eval(r) - z) * y[0]};
  };
}

void check_points(std::span<const double> points, double R) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] > 0.0) || points[i] > R) throw ParameterError("radial solution: sample radii must lie in (0, R]");
    if (i > 0 && !(points[i] > points[i - 1])) throw ParameterError("radial solution: sample radii must increase");
  }
}

std::vector<double> interior_breakpoints(const RadialPotential2D* V, double lo, double hi) {
  std::vector<double> b;
  if (V)
    for (double x : V->breakpoints)
      if (x > lo && x < hi) b.push_back(x);
  return b;
}

}  // namespace

void check_mode_index(int ell) {
  if (std::abs(ell) > max_mode_index)
    throw ModeRangeError("mode index " + std::to_string(ell) + " exceeds " + std::to_string(max_mode_index), ell);
}

RadialSolution radial_regular_solution(int ell, const RadialPotential2D* V, double R, const SpectralPoint& pt,
                                       std::span<const double> points, const RadialOptions& opts) {
  check_mode_index(ell);
  check_points(points, R);
  const int l = std::abs(ell);
  const double r0 = opts.launch_fraction * R;
  if (!(r0 > 0.0 && r0 < R)) throw ParameterError("radial_regular_solution: launch fraction must be in (0, 1)");
  const cplx v0 = V ? V->eval(r0) : cplx{};
  const cplx c = (v0 - pt.z) / (4.0 * (l + 1.0));

  auto frobenius = [&](double r, ScaledValue& u, ScaledValue& du) {
    const double ls = l * std::log(r);
    u = ScaledValue{1.0 + c * r * r, ls};
    du = ScaledValue{static_cast<double>(l) / r + (l + 2.0) * c * r, ls};
  };

  RadialSolution sol;
  sol.r.assign(points.begin(), points.end());
  sol.u.resize(points.size());
  sol.du.resize(points.size());

  std::vector<double> stops = interior_breakpoints(V, r0, R);
  std::size_t first_ode = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] <= r0) {
      frobenius(points[i], sol.u[i], sol.du[i]);
      first_ode = i + 1;
    } else if (points[i] < R) {
      stops.push_back(points[i]);
    }
  }
  stops.push_back(R);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  ScaledValue u0, du0;
  frobenius(r0, u0, du0);
  ScaledState start{{u0.mantissa, du0.mantissa}, u0.log_scale};
  OdeOptions o;
  o.tol = opts.tol;
  auto states = integrate_linear(radial_system(l, V, pt.z), r0, start, stops, o);

  std::size_t s = 0;
  for (std::size_t i = first_ode; i < points.size(); ++i) {
    while (stops[s] != points[i]) ++s;
    sol.u[i] = ScaledValue{states[s].y[0], states[s].log_scale};
    sol.du[i] = ScaledValue{states[s].y[1], states[s].log_scale};
  }
  sol.u_R = ScaledValue{states.back().y[0], states.back().log_scale};
  sol.du_R = ScaledValue{states.back().y[1], states.back().log_scale};
  ensure_finite(sol.u_R.mantissa, "radial_regular_solution");
  ensure_finite(sol.du_R.mantissa, "radial_regular_solution");
  return sol;
}

RadialSolution radial_regular_solution(int ell, const RadialPotential2D& V, const SpectralPoint& pt,
                                       std::span<const double> points, const RadialOptions& opts) {
  return radial_regular_solution(ell, &V, V.R, pt, points, opts);
}

RadialSolution radial_boundary_solution(int ell, const RadialPotential2D* V, double R, const SpectralPoint& pt,
                                        Boundary bc, std::span<const double> points, const RadialOptions& opts) {
  check_mode_index(ell);
  check_points(points, R);
  const int l = std::abs(ell);
  RadialSolution sol;
  sol.r.assign(points.begin(), points.end());
  sol.u.resize(points.size());
  sol.du.resize(points.size());
  sol.u_R = ScaledValue{bc == Boundary::dirichlet ? 0.0 : 1.0, 0.0};
  sol.du_R = ScaledValue{bc == Boundary::dirichlet ? 1.0 : 0.0, 0.0};
  if (points.empty()) return sol;

  std::vector<double> stops = interior_breakpoints(V, points.front(), R);
  for (double p : points)
    if (p < R) stops.push_back(p);
  std::sort(stops.begin(), stops.end(), std::greater<>());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  OdeOptions o;
  o.tol = opts.tol;
  std::vector<ScaledState> states;
  if (!stops.empty()) {
    ScaledState start{{sol.u_R.mantissa, sol.du_R.mantissa}, 0.0};
    states = integrate_linear(radial_system(l, V, pt.z), R, start, stops, o);
  }
  // stops descend, so walk the points from the top
  std::size_t s = 0;
  for (std::size_t k = points.size(); k-- > 0;) {
    if (points[k] == R) {
      sol.u[k] = sol.u_R;
      sol.du[k] = sol.du_R;
      continue;
    }
    while (stops[s] != points[k]) ++s;
    sol.u[k] = ScaledValue{states[s].y[0], states[s].log_scale};
    sol.du[k] = ScaledValue{states[s].y[1], states[s].log_scale};
  }
  return sol;
}

}  // namespace detlab
