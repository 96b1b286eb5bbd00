#pragma once

#include <functional>
#include <string>
#include <vector>

#include "detlab/numerics/types.hpp"

namespace detlab {

struct Potential1D {
  std::function<cplx(double)> eval;
  double x_max = 30.0;
  std::vector<double> breakpoints;  // discontinuities inside (0, x_max)
  double l1_tail_bound = 0.0;       // bound on the integral of |V| over (x_max, inf)
  bool real_valued = true;
  std::string description;

  cplx operator()(double x) const { return eval(x); }
};

Potential1D zero_potential(double x_max = 30.0);
// amplitude * exp(-rate x)
Potential1D exponential_potential(cplx amplitude, double rate, double x_max = 30.0);
// -depth on (0, width), zero beyond
Potential1D square_well(double depth, double width, double x_max = 30.0);

struct PotentialTable {
  std::vector<double> x;
  std::vector<cplx> v;
};

// CSV with columns {x, v_re, v_im}; an optional header line and '#' comments
// are skipped. Abscissae must be strictly increasing and non-negative.
PotentialTable read_potential_table(const std::string& path);

// Linear interpolation between samples, the first sample held constant on
// (0, x_0), zero beyond the last sample.
Potential1D tabulated_potential(PotentialTable table, double x_max = 30.0);
cplx interpolate_table(const PotentialTable& table, double x);

// Kinks of the interpolant inside (0, end): every sample when there are at
// most max_table_breakpoints of them, else only the last sample.
inline constexpr std::size_t max_table_breakpoints = 32;
std::vector<double> table_breakpoints(const PotentialTable& table, double end);

// Integral of |V| over (0, x_max) by composite Gauss-Legendre quadrature.
double l1_norm(const Potential1D& V);

// V = u v with v = |V|^{1/2} and u = V / |V|^{1/2}.
struct FactorizedPotential {
  std::function<cplx(double)> u;
  std::function<cplx(double)> v;
};

FactorizedPotential factorize(const Potential1D& V);
inline cplx factor_u(cplx value) {
  double m = std::abs(value);
  return m == 0.0 ? cplx{} : value / std::sqrt(m);
}
inline double factor_v(cplx value) { return std::sqrt(std::abs(value)); }

}  // namespace detlab
