#include "detlab/halfline/green.hpp"

#include <algorithm>
#include <cmath>

#include "detlab/numerics/errors.hpp"

namespace detlab {

ScaledValue free_regular(Boundary bc, const SpectralPoint& pt, double x) {
  const cplx k = pt.sqrt_z;
  const double a = k.imag() * x;
  if (a < 1.0) {
    return bc == Boundary::dirichlet ? ScaledValue{std::sin(k * x) / k, 0.0} : ScaledValue{std::cos(k * x), 0.0};
  }
  const cplx grow = std::exp(-imag_unit * k * x - a);  // |.| = 1
  const cplx decay = std::exp(imag_unit * k * x - a);  // |.| = exp(-2a)
  if (bc == Boundary::dirichlet) return ScaledValue{(decay - grow) / (2.0 * imag_unit * k), a};
  return ScaledValue{0.5 * (decay + grow), a};
}

ScaledValue free_outgoing(const SpectralPoint& pt, double x) {
  const cplx k = pt.sqrt_z;
  return ScaledValue{std::exp(imag_unit * k.real() * x), -k.imag() * x};
}

cplx free_green_kernel(Boundary bc, const SpectralPoint& pt, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw ParameterError("free_green_kernel: x, y must be positive");
  const cplx k = pt.sqrt_z;
  const double lo = std::min(x, y), hi = std::max(x, y);
  const cplx sum = std::exp(imag_unit * k * (hi + lo));
  const cplx diff = std::exp(imag_unit * k * (hi - lo));
  if (bc == Boundary::dirichlet) return (sum - diff) / (2.0 * imag_unit * k);
  return (sum + diff) / (-2.0 * imag_unit * k);
}

SemiSeparableKernel free_kernel_table(Boundary bc, const SpectralPoint& pt, const NystromPlan& plan) {
  const auto& xs = plan.abscissae();
  std::vector<ScaledValue> inner(xs.size()), outer(xs.size());
  for (std::size_t a = 0; a < xs.size(); ++a) {
    inner[a] = free_regular(bc, pt, xs[a]);
    outer[a] = free_outgoing(pt, xs[a]);
  }
  // W(exp(ik.), s) at 0
  const cplx w = bc == Boundary::dirichlet ? cplx{1.0, 0.0} : -imag_unit * pt.sqrt_z;
  return SemiSeparableKernel(std::move(inner), std::move(outer), ScaledValue{w, 0.0});
}

}  // namespace detlab
