#include "detlab/halfline/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "detlab/numerics/errors.hpp"
#include "detlab/numerics/ode.hpp"

namespace detlab {

namespace {

constexpr double tail_budget = 1e-10;

LinearSystem schrodinger_system(const Potential1D& V, cplx z) {
  return [&V, z](double x, const OdeVector& y) { return OdeVector{y[1], (V(x) - z) * y[0]}; };
}

// Jost solution written as f = F exp(ikx): F'' + 2ik F' = V F with F = 1,
// F' = 0 at x_max. F stays of moderate size and is constant where V = 0.
LinearSystem modulated_jost_system(const Potential1D& V, cplx k) {
  const cplx two_ik = 2.0 * imag_unit * k;
  return [&V, two_ik](double x, const OdeVector& y) { return OdeVector{y[1], V(x) * y[0] - two_ik * y[1]}; };
}

// (f, f') at x from the modulated state.
std::pair<cplx, cplx> demodulate(const ScaledState& st, cplx k, double x) {
  const cplx F = st.value(0), dF = st.value(1);
  const cplx phase = std::exp(imag_unit * k * x);
  return {F * phase, (dF + imag_unit * k * F) * phase};
}

// Stops in integration order: breakpoints and grid nodes strictly between
// `from` and `to`, then `to` itself. `slot` maps grid node i to its stop.
std::vector<double> make_stops(const Potential1D& V, const std::vector<double>& nodes, double from, double to,
                               std::vector<std::size_t>* slot) {
  const double dir = to > from ? 1.0 : -1.0;
  std::vector<double> s;
  for (double b : V.breakpoints)
    if (dir * (b - from) > 0.0 && dir * (to - b) > 0.0) s.push_back(b);
  for (double x : nodes)
    if (dir * (x - from) > 0.0 && dir * (to - x) > 0.0) s.push_back(x);
  s.push_back(to);
  std::sort(s.begin(), s.end(), [dir](double a, double b) { return dir * a < dir * b; });
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (slot) {
    slot->resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto it = std::find(s.begin(), s.end(), nodes[i]);
      if (it == s.end()) throw ParameterError("grid node outside the integration span");
      (*slot)[i] = static_cast<std::size_t>(it - s.begin());
    }
  }
  return s;
}

SolutionSample forward_solution(const Potential1D& V, const SpectralPoint& pt, const QuadratureGrid& grid,
                                cplx y0, cplx dy0, double tol) {
  if (grid.right() > V.x_max * (1.0 + 1e-12) || grid.left() < 0.0)
    throw ParameterError("solution grid must lie inside (0, x_max)");
  std::vector<std::size_t> slot;
  auto stops = make_stops(V, grid.nodes(), 0.0, grid.right(), &slot);
  OdeOptions opts;
  opts.tol = tol;
  auto states = integrate_linear(schrodinger_system(V, pt.z), 0.0, ScaledState{{y0, dy0}, 0.0}, stops, opts);
  SolutionSample s;
  s.grid = grid;
  s.values.resize(grid.size());
  s.derivatives.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s.values[i] = ensure_finite(states[slot[i]].value(0), "regular solution");
    s.derivatives[i] = ensure_finite(states[slot[i]].value(1), "regular solution");
  }
  s.value_at_0 = y0;
  s.derivative_at_0 = dy0;
  return s;
}

void check_tail(const Potential1D& V) {
  if (V.l1_tail_bound > tail_budget) {
    // the bound scales roughly like the potential's own decay; suggest where it
    // would be met if the decay were exponential with the observed rate
    double suggested = V.x_max * 2.0;
    const double v_end = std::abs(V(V.x_max));
    if (v_end > 0.0 && V.l1_tail_bound > 0.0) {
      const double rate = v_end / V.l1_tail_bound;
      if (rate > 0.0) suggested = V.x_max + std::log(V.l1_tail_bound / tail_budget) / rate;
    }
    throw TruncationError("Jost launch point x_max = " + std::to_string(V.x_max) +
                              " leaves a tail bound of " + std::to_string(V.l1_tail_bound) +
                              "; suggested x_max = " + std::to_string(suggested),
                          suggested);
  }
}

}  // namespace

QuadratureGrid halfline_grid(const Potential1D& V, const Discretization& disc, int level) {
  if (level < 0 || level > 12) throw ParameterError("halfline_grid: level out of range");
  if (disc.n_panels < 1) throw ParameterError("halfline_grid: n_panels must be >= 1");
  if (!(V.x_max > 0.0) || !std::isfinite(V.x_max)) throw ParameterError("halfline_grid: x_max must be positive");
  // Edges x_max (j/n)^2: short panels near 0 where V is usually concentrated,
  // and the edge set at 2n contains the one at n.
  const int n = disc.n_panels << level;
  std::vector<double> edges(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double t = static_cast<double>(j) / n;
    edges[j] = j == n ? V.x_max : V.x_max * t * t;
  }
  for (double bp : V.breakpoints) {
    if (!(bp > 0.0 && bp < V.x_max)) continue;
    auto it = std::lower_bound(edges.begin(), edges.end(), bp);
    if (*it == bp) continue;
    // an interior edge within a quarter panel of bp moves onto it
    const double width = *it - *(it - 1);
    auto near = (*it - bp < bp - *(it - 1)) ? it : it - 1;
    if (std::abs(*near - bp) < 0.25 * width && near != edges.begin() && near != edges.end() - 1)
      *near = bp;
    else
      edges.insert(it, bp);
  }
  return gauss_legendre_on_edges(edges, disc.nodes_per_panel, WeightKind::lebesgue);
}

SolutionSample regular_solution_dirichlet(const Potential1D& V, const SpectralPoint& pt, const QuadratureGrid& grid,
                                          double tol) {
  return forward_solution(V, pt, grid, 0.0, 1.0, tol);
}

SolutionSample regular_solution_neumann(const Potential1D& V, const SpectralPoint& pt, const QuadratureGrid& grid,
                                        double tol) {
  return forward_solution(V, pt, grid, 1.0, 0.0, tol);
}

SolutionSample jost_solution(const Potential1D& V, const SpectralPoint& pt, const QuadratureGrid& grid, double tol) {
  check_tail(V);
  const double xm = V.x_max;
  std::vector<std::size_t> slot;
  auto stops = make_stops(V, grid.nodes(), xm, 0.0, &slot);
  OdeOptions opts;
  opts.tol = tol;
  const cplx k = pt.sqrt_z;
  auto states = integrate_linear(modulated_jost_system(V, k), xm, ScaledState{{1.0, 0.0}, 0.0}, stops, opts);
  SolutionSample s;
  s.grid = grid;
  s.values.resize(grid.size());
  s.derivatives.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto [f, fp] = demodulate(states[slot[i]], k, grid.nodes()[i]);
    s.values[i] = ensure_finite(f, "jost_solution");
    s.derivatives[i] = ensure_finite(fp, "jost_solution");
  }
  auto [f0, fp0] = demodulate(states.back(), k, 0.0);
  s.value_at_0 = ensure_finite(f0, "jost_solution");
  s.derivative_at_0 = ensure_finite(fp0, "jost_solution");
  return s;
}

SolutionSample regular_solution_dirichlet(const Potential1D& V, const SpectralPoint& pt) {
  return regular_solution_dirichlet(V, pt, halfline_grid(V, Discretization{}));
}
SolutionSample regular_solution_neumann(const Potential1D& V, const SpectralPoint& pt) {
  return regular_solution_neumann(V, pt, halfline_grid(V, Discretization{}));
}
SolutionSample jost_solution(const Potential1D& V, const SpectralPoint& pt) {
  return jost_solution(V, pt, halfline_grid(V, Discretization{}));
}

std::pair<cplx, cplx> jost_boundary_values(const Potential1D& V, const SpectralPoint& pt, double tol) {
  check_tail(V);
  auto stops = make_stops(V, {}, V.x_max, 0.0, nullptr);
  OdeOptions opts;
  opts.tol = tol;
  const cplx k = pt.sqrt_z;
  auto states = integrate_linear(modulated_jost_system(V, k), V.x_max, ScaledState{{1.0, 0.0}, 0.0}, stops, opts);
  auto [f0, fp0] = demodulate(states.back(), k, 0.0);
  return {ensure_finite(f0, "jost_boundary_values"), ensure_finite(fp0, "jost_boundary_values")};
}

cplx wronskian(const SolutionSample& f, const SolutionSample& g, double x) {
  if (f.grid.nodes() != g.grid.nodes()) throw ParameterError("wronskian: samples live on different grids");
  if (x == 0.0) return f.value_at_0 * g.derivative_at_0 - f.derivative_at_0 * g.value_at_0;
  const auto& n = f.grid.nodes();
  auto it = std::lower_bound(n.begin(), n.end(), x);
  if (it == n.end() || *it != x) throw ParameterError("wronskian: x must be a grid node or 0");
  std::size_t i = static_cast<std::size_t>(it - n.begin());
  return f.values[i] * g.derivatives[i] - f.derivatives[i] * g.values[i];
}

cplx free_m_function(const SpectralPoint& pt, Boundary bc) {
  return bc == Boundary::dirichlet ? imag_unit * pt.sqrt_z : imag_unit / pt.sqrt_z;
}

cplx m_function(const Potential1D& V, const SpectralPoint& pt, Boundary bc, double tol) {
  auto [f0, fp0] = jost_boundary_values(V, pt, tol);
  if (bc == Boundary::dirichlet) {
    if (std::abs(f0) < 1e-12) throw PoleError("m_function: f(z, 0) vanishes (Dirichlet eigenvalue)", std::abs(f0));
    return fp0 / f0;
  }
  if (std::abs(fp0) < 1e-12) throw PoleError("m_function: f'(z, 0) vanishes (Neumann eigenvalue)", std::abs(fp0));
  return -f0 / fp0;
}

double volterra_residual(const Potential1D& V, const SpectralPoint& pt, const SolutionSample& s, SolutionKind kind) {
  const QuadratureGrid& g = s.grid;
  const auto& x = g.nodes();
  const cplx k = pt.sqrt_z;
  const std::size_t n = g.size();
  const int m = 24;
  const QuadratureRule rule = gauss_legendre_rule(m);

  // psi on a panel sub-interval by Lagrange interpolation of the node values
  std::vector<std::vector<double>> bary;
  for (const Panel& p : g.panels())
    bary.push_back(barycentric_weights(std::span<const double>(x.data() + p.first, p.count)));
  std::vector<double> basis;
  auto integrate_piece = [&](std::size_t pidx, double a, double b, double xi) {
    const Panel& p = g.panels()[pidx];
    basis.resize(p.count);
    std::span<const double> pn(x.data() + p.first, p.count);
    cplx sum = 0.0;
    for (int q = 0; q < m; ++q) {
      double y = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[q];
      lagrange_basis(pn, bary[pidx], y, basis);
      cplx psi = 0.0;
      for (std::size_t j = 0; j < p.count; ++j) psi += basis[j] * s.values[p.first + j];
      sum += 0.5 * (b - a) * rule.weights[q] * std::sin(k * (xi - y)) / k * V(y) * psi;
    }
    return sum;
  };

  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(s.values[i]));
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const std::size_t own = g.panel_of(i);
    cplx integral = 0.0;
    cplx free_term;
    if (kind == SolutionKind::jost) {
      free_term = std::exp(imag_unit * k * xi);
      integral -= integrate_piece(own, xi, g.panels()[own].right, xi);
      for (std::size_t p = own + 1; p < g.panels().size(); ++p)
        integral -= integrate_piece(p, g.panels()[p].left, g.panels()[p].right, xi);
    } else {
      free_term = kind == SolutionKind::regular_dirichlet ? std::sin(k * xi) / k : std::cos(k * xi);
      for (std::size_t p = 0; p < own; ++p) integral += integrate_piece(p, g.panels()[p].left, g.panels()[p].right, xi);
      integral += integrate_piece(own, g.panels()[own].left, xi, xi);
    }
    worst = std::max(worst, std::abs(s.values[i] - free_term - integral));
  }
  return worst / std::max(scale, 1e-300);
}

double collocation_residual(const Potential1D& V, const SpectralPoint& pt, const SolutionSample& s) {
  const QuadratureGrid& g = s.grid;
  const auto& x = g.nodes();
  double worst = 0.0, scale = 0.0;
  for (const cplx& v : s.values) scale = std::max(scale, std::abs(v));
  std::vector<double> d;
  for (const Panel& p : g.panels()) {
    std::span<const double> pn(x.data() + p.first, p.count);
    auto bary = barycentric_weights(pn);
    d.resize(p.count);
    for (std::size_t i = 0; i < p.count; ++i) {
      lagrange_basis_derivative(pn, bary, pn[i], d);
      cplx second = 0.0;
      for (std::size_t j = 0; j < p.count; ++j) second += d[j] * s.derivatives[p.first + j];
      const std::size_t gi = p.first + i;
      worst = std::max(worst, std::abs(second - (V(x[gi]) - pt.z) * s.values[gi]));
    }
  }
  return worst / std::max(scale, 1e-300);
}

}  // namespace detlab
