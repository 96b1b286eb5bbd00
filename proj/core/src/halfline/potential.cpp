#include "detlab/halfline/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "detlab/numerics/errors.hpp"
#include "detlab/numerics/quadrature.hpp"

namespace detlab {

Potential1D zero_potential(double x_max) {
  Potential1D V;
  V.eval = [](double) { return cplx{}; };
  V.x_max = x_max;
  V.description = "zero";
  return V;
}

Potential1D exponential_potential(cplx amplitude, double rate, double x_max) {
  if (!(rate > 0.0)) throw ParameterError("exponential_potential: rate must be positive");
  if (!(x_max > 0.0)) throw ParameterError("exponential_potential: x_max must be positive");
  Potential1D V;
  V.eval = [amplitude, rate](double x) { return amplitude * std::exp(-rate * x); };
  V.x_max = x_max;
  V.l1_tail_bound = std::abs(amplitude) / rate * std::exp(-rate * x_max);
  V.real_valued = amplitude.imag() == 0.0;
  std::ostringstream os;
  os << "exp1d amplitude=(" << amplitude.real() << "," << amplitude.imag() << ") rate=" << rate;
  V.description = os.str();
  return V;
}

Potential1D square_well(double depth, double width, double x_max) {
  if (!(width > 0.0)) throw ParameterError("square_well: width must be positive");
  if (!std::isfinite(depth)) throw ParameterError("square_well: depth must be finite");
  if (!(x_max > 0.0)) throw ParameterError("square_well: x_max must be positive");
  Potential1D V;
  V.eval = [depth, width](double x) { return x < width ? cplx{-depth, 0.0} : cplx{}; };
  V.x_max = x_max;
  if (width < x_max) V.breakpoints = {width};
  V.l1_tail_bound = width > x_max ? std::abs(depth) * (width - x_max) : 0.0;
  std::ostringstream os;
  os << "well1d depth=" << depth << " width=" << width;
  V.description = os.str();
  return V;
}

PotentialTable read_potential_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open potential table '" + path + "'");
  PotentialTable t;
  std::string line;
  int lineno = 0;
  bool data_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, re, im;
    if (!(row >> x >> re >> im)) {
      if (!data_seen) continue;  // header
      throw ParameterError(path + ":" + std::to_string(lineno) + ": expected three numeric columns");
    }
    std::string extra;
    if (row >> extra) throw ParameterError(path + ":" + std::to_string(lineno) + ": too many columns");
    if (!std::isfinite(x) || !std::isfinite(re) || !std::isfinite(im))
      throw ParameterError(path + ":" + std::to_string(lineno) + ": non-finite value");
    if (x < 0.0)
      throw ParameterError(path + ":" + std::to_string(lineno) + ": abscissa must be non-negative");
    if (!t.x.empty() && !(x > t.x.back()))
      throw ParameterError(path + ":" + std::to_string(lineno) + ": abscissae must be strictly increasing");
    t.x.push_back(x);
    t.v.emplace_back(re, im);
    data_seen = true;
  }
  if (t.x.size() < 2) throw ParameterError(path + ": need at least two samples");
  return t;
}

cplx interpolate_table(const PotentialTable& t, double x) {
  if (x <= t.x.front()) return t.v.front();
  if (x > t.x.back()) return cplx{};
  if (x == t.x.back()) return t.v.back();
  auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
  std::size_t j = static_cast<std::size_t>(it - t.x.begin());
  double s = (x - t.x[j - 1]) / (t.x[j] - t.x[j - 1]);
  return (1.0 - s) * t.v[j - 1] + s * t.v[j];
}

Potential1D tabulated_potential(PotentialTable table, double x_max) {
  if (table.x.size() < 2 || table.x.size() != table.v.size())
    throw ParameterError("tabulated_potential: need matching samples");
  Potential1D V;
  const double last = table.x.back();
  V.real_valued = std::all_of(table.v.begin(), table.v.end(), [](cplx c) { return c.imag() == 0.0; });
  V.breakpoints = table_breakpoints(table, x_max);
  if (last > x_max) {
    double tail = 0.0;
    for (std::size_t j = 1; j < table.x.size(); ++j) {
      double a = std::max(table.x[j - 1], x_max), b = table.x[j];
      if (b <= a) continue;
      tail += (b - a) * std::max(std::abs(table.v[j - 1]), std::abs(table.v[j]));
    }
    V.l1_tail_bound = tail;
  }
  std::ostringstream os;
  os << "table1d samples=" << table.x.size() << " extension=zero";
  V.description = os.str();
  auto shared = std::make_shared<const PotentialTable>(std::move(table));
  V.eval = [shared](double x) { return interpolate_table(*shared, x); };
  V.x_max = x_max;
  return V;
}

std::vector<double> table_breakpoints(const PotentialTable& table, double end) {
  std::vector<double> b;
  for (double x : table.x)
    if (x > 0.0 && x < end) b.push_back(x);
  if (b.size() <= max_table_breakpoints) return b;
  if (b.back() == table.x.back() && table.v.back() != cplx{}) return {b.back()};
  return {};
}

double l1_norm(const Potential1D& V) {
  QuadratureGrid g = gauss_legendre_panels(0.0, V.x_max, 64, 16, WeightKind::lebesgue, V.breakpoints);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights()[i] * std::abs(V(g.nodes()[i]));
  if (!std::isfinite(s)) throw ParameterError("potential is not integrable on (0, x_max)");
  return s;
}

FactorizedPotential factorize(const Potential1D& V) {
  auto eval = V.eval;
  return FactorizedPotential{[eval](double x) { return factor_u(eval(x)); },
                             [eval](double x) { return cplx{factor_v(eval(x)), 0.0}; }};
}

}  // namespace detlab
