#include "detlab/disk/radial_potential.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "detlab/numerics/errors.hpp"
#include "detlab/numerics/quadrature.hpp"

namespace detlab {

RadialPotential2D zero_radial_potential(double R) {
  if (!(R > 0.0)) throw ParameterError("radial potential: R must be positive");
  RadialPotential2D V;
  V.eval = [](double) { return cplx{}; };
  V.R = R;
  V.description = "zero";
  return V;
}

RadialPotential2D radial_gaussian(cplx amplitude, double width, double R) {
  if (!(R > 0.0)) throw ParameterError("radial_gaussian: R must be positive");
  if (!(width > 0.0)) throw ParameterError("radial_gaussian: width must be positive");
  RadialPotential2D V;
  const double a = 1.0 / (2.0 * width * width);
  V.eval = [amplitude, a](double r) { return amplitude * std::exp(-a * r * r); };
  V.R = R;
  V.real_valued = amplitude.imag() == 0.0;
  std::ostringstream os;
  os << "radial_gaussian amplitude=(" << amplitude.real() << "," << amplitude.imag() << ") width=" << width
     << " R=" << R;
  V.description = os.str();
  return V;
}

RadialPotential2D radial_tabulated(PotentialTable table, double R) {
  if (!(R > 0.0)) throw ParameterError("radial_tabulated: R must be positive");
  if (table.x.size() < 2 || table.x.size() != table.v.size())
    throw ParameterError("radial_tabulated: need matching samples");
  RadialPotential2D V;
  V.R = R;
  V.real_valued = std::all_of(table.v.begin(), table.v.end(), [](cplx c) { return c.imag() == 0.0; });
  V.breakpoints = table_breakpoints(table, R);
  std::ostringstream os;
  os << "radial_table samples=" << table.x.size() << " R=" << R << " extension=zero";
  V.description = os.str();
  auto shared = std::make_shared<const PotentialTable>(std::move(table));
  V.eval = [shared](double r) { return interpolate_table(*shared, r); };
  return V;
}

RadialPotential2D scaled(const RadialPotential2D& V, cplx factor) {
  RadialPotential2D W = V;
  auto eval = V.eval;
  W.eval = [eval, factor](double r) { return factor * eval(r); };
  W.real_valued = V.real_valued && factor.imag() == 0.0;
  std::ostringstream os;
  os << V.description << " scaled=(" << factor.real() << "," << factor.imag() << ")";
  W.description = os.str();
  return W;
}

double radial_lp_integral(const RadialPotential2D& V) {
  if (!(V.p_exponent > 4.0 / 3.0 && V.p_exponent <= 2.0))
    throw ParameterError("radial potential: p_exponent must satisfy 4/3 < p <= 2");
  QuadratureGrid g = gauss_legendre_panels(0.0, V.R, 32, 16, WeightKind::radial, V.breakpoints);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights()[i] * std::pow(std::abs(V(g.nodes()[i])), V.p_exponent);
  if (!std::isfinite(s)) throw ParameterError("radial potential: integral of |V|^p r dr is not finite");
  return s;
}

}  // namespace detlab
