#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "detlab/numerics/types.hpp"

namespace detlab {

using OdeVector = std::array<cplx, 2>;

// Right-hand side of a first-order system y' = F(x, y) that is linear in y.
using LinearSystem = std::function<OdeVector(double x, const OdeVector& y)>;

struct OdeOptions {
  double tol = 1e-12;        // relative local error per step
  double initial_step = 0.0;  // 0 selects a step from the initial slope
  std::size_t max_steps = 50'000'000;
};

// State y * exp(log_scale). Linearity of the system lets the integrator
// rescale y whenever it drifts far from unit size.
struct ScaledState {
  OdeVector y{};
  double log_scale = 0.0;

  cplx value(std::size_t k) const { return y[k] * std::exp(log_scale); }
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// Dormand-Prince 5(4) integration from x0 through every stop in order. The
// stops must be monotone in the direction of integration; discontinuities of
// F must coincide with stops, since every step ends before crossing one and
// stage abscissae are kept strictly inside the step.
std::vector<ScaledState> integrate_linear(const LinearSystem& f, double x0, const ScaledState& start,
                                          std::span<const double> stops, const OdeOptions& opts = {},
                                          IntegrationStats* stats = nullptr);

struct SecondOrderSample {
  std::vector<double> x;
  std::vector<cplx> y;
  std::vector<cplx> dy;
  IntegrationStats stats;
};

// y'' = q(x) y on (x0, x1), either direction. Samples are reported at x0, at
// every requested interior point (in integration order) and at x1.
SecondOrderSample ode_second_order(const std::function<cplx(double)>& q, double x0, double x1, cplx y0,
                                   cplx dy0, double tol, std::span<const double> sample_points = {});

}  // namespace detlab
