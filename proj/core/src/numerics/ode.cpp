#include "detlab/numerics/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "detlab/numerics/errors.hpp"

namespace detlab {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double sup(const OdeVector& y) { return std::max(std::abs(y[0]), std::abs(y[1])); }

OdeVector axpy(const OdeVector& y, double h, std::initializer_list<std::pair<double, const OdeVector*>> terms) {
  OdeVector out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    out[0] += (h * c) * (*k)[0];
    out[1] += (h * c) * (*k)[1];
  }
  return out;
}

void renormalize(ScaledState& s) {
  double m = sup(s.y);
  if (m > 0.0 && (m > 1e8 || m < 1e-8)) {
    s.y[0] /= m;
    s.y[1] /= m;
    s.log_scale += std::log(m);
  }
}

}  // namespace

std::vector<ScaledState> integrate_linear(const LinearSystem& f, double x0, const ScaledState& start,
                                          std::span<const double> stops, const OdeOptions& opts,
                                          IntegrationStats* stats) {
  if (!(opts.tol >= 1e-15 && opts.tol <= 1e-3)) throw ParameterError("integrate_linear: tol out of range");
  std::vector<ScaledState> out;
  out.reserve(stops.size());
  if (stops.empty()) return out;

  const double dir = (stops.back() >= x0) ? 1.0 : -1.0;
  double prev = x0;
  for (double s : stops) {
    if (!std::isfinite(s) || dir * (s - prev) < 0.0)
      throw ParameterError("integrate_linear: stops must be finite and monotone");
    prev = s;
  }

  ScaledState state = start;
  renormalize(state);
  double x = x0;
  const double span = std::abs(stops.back() - x0);
  double h = opts.initial_step;
  if (h <= 0.0) {
    OdeVector k = f(x0, state.y);
    double ratio = sup(k) / std::max(sup(state.y), 1e-300);
    h = 0.5 * std::pow(opts.tol, 0.2) / std::max(ratio, 1e-3);
    h = std::min(h, std::max(span, 1e-300));
  }
  IntegrationStats local;

  for (double target : stops) {
    while (dir * (target - x) > 0.0) {
      if (local.accepted + local.rejected >= opts.max_steps)
        throw StiffnessError("integrate_linear: step budget exhausted near x = " + std::to_string(x), x);
      const double remaining = std::abs(target - x);
      bool truncated = false;
      double step = h;
      if (step >= remaining) {
        step = remaining;
        truncated = true;
      } else if (step > 0.5 * remaining && step < remaining) {
        // avoid leaving a sliver before the stop
        step = 0.5 * remaining;
      }
      const double hs = dir * step;
      const double lo = std::min(x, x + hs), hi = std::max(x, x + hs);
      const double nudge = std::min(step * 1e-6, 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)));
      auto at = [&](double c) { return std::clamp(x + c * hs, lo + nudge, hi - nudge); };

      const OdeVector& y = state.y;
      OdeVector k1 = f(at(0.0), y);
      OdeVector k2 = f(at(c2), axpy(y, hs, {{a21, &k1}}));
      OdeVector k3 = f(at(c3), axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
      OdeVector k4 = f(at(c4), axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      OdeVector k5 = f(at(c5), axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      OdeVector k6 = f(at(1.0), axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      OdeVector ynew = axpy(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      OdeVector k7 = f(at(1.0), ynew);
      OdeVector err = axpy(OdeVector{}, hs, {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});

      const double scale = opts.tol * std::max({sup(y), sup(ynew), 1e-300});
      const double ratio = sup(err) / scale;
      if (!std::isfinite(ratio)) throw StiffnessError("integrate_linear: non-finite step at x = " + std::to_string(x), x);

      if (ratio <= 1.0) {
        x = truncated ? target : x + hs;
        state.y = ynew;
        renormalize(state);
        ++local.accepted;
        double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
        grow = std::clamp(grow, 0.2, 5.0);
        // a truncated step says nothing about how large h may grow
        if (!truncated || step >= h) h = std::max(h, step) * grow;
      } else {
        ++local.rejected;
        h = step * std::clamp(0.9 * std::pow(ratio, -0.2), 0.1, 0.9);
        if (h < 1e-14 * std::max(1.0, std::abs(x)))
          throw StiffnessError("integrate_linear: step size underflow at x = " + std::to_string(x), x);
      }
    }
    out.push_back(state);
  }
  if (stats) *stats = local;
  return out;
}

SecondOrderSample ode_second_order(const std::function<cplx(double)>& q, double x0, double x1, cplx y0,
                                   cplx dy0, double tol, std::span<const double> sample_points) {
  if (!(tol >= 1e-14 && tol <= 1e-6)) throw ParameterError("ode_second_order: tol must be in [1e-14, 1e-6]");
  if (!(x0 != x1)) throw ParameterError("ode_second_order: empty span");
  const double dir = x1 > x0 ? 1.0 : -1.0;
  std::vector<double> stops;
  for (double s : sample_points) {
    if (dir * (s - x0) > 0.0 && dir * (x1 - s) > 0.0) stops.push_back(s);
  }
  std::sort(stops.begin(), stops.end(), [dir](double a, double b) { return dir * a < dir * b; });
  stops.push_back(x1);

  LinearSystem f = [&q](double x, const OdeVector& y) { return OdeVector{y[1], q(x) * y[0]}; };
  OdeOptions opts;
  opts.tol = tol;
  SecondOrderSample sample;
  auto states = integrate_linear(f, x0, ScaledState{{y0, dy0}, 0.0}, stops, opts, &sample.stats);
  sample.x.push_back(x0);
  sample.y.push_back(y0);
  sample.dy.push_back(dy0);
  for (std::size_t k = 0; k < stops.size(); ++k) {
    sample.x.push_back(stops[k]);
    sample.y.push_back(ensure_finite(states[k].value(0), "ode_second_order"));
    sample.dy.push_back(ensure_finite(states[k].value(1), "ode_second_order"));
  }
  return sample;
}

}  // namespace detlab
