#include "detlab/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "detlab/numerics/errors.hpp"

namespace detlab {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_legendre_rule(int n) {
  if (n < 1 || n > 512) throw ParameterError("gauss_legendre_rule: n must be in [1, 512]");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(n, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    auto [p, dp] = legendre(n, x);
    (void)p;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_lobatto_rule(int n) {
  if (n < 2 || n > 512) throw ParameterError("gauss_lobatto_rule: n must be in [2, 512]");
  const int p = n - 1;
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.nodes[0] = -1.0;
  rule.nodes[p] = 1.0;
  // interior nodes are the roots of P_p'; Newton on q = (1-x^2) P_p'
  for (int i = 1; i < p; ++i) {
    double x = -std::cos(std::numbers::pi * i / p);
    for (int it = 0; it < 100; ++it) {
      auto [lp, dlp] = legendre(p, x);
      // (1-x^2) P'' = 2x P' - p(p+1) P
      double d2 = (2.0 * x * dlp - p * (p + 1.0) * lp) / (1.0 - x * x);
      double dx = dlp / d2;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
  }
  for (int i = 0; i < n; ++i) {
    double x = rule.nodes[i];
    double lp = (i == 0) ? (p % 2 == 0 ? 1.0 : -1.0) : (i == p ? 1.0 : legendre(p, x).first);
    rule.weights[i] = 2.0 / (p * (p + 1.0) * lp * lp);
  }
  return rule;
}

QuadratureGrid::QuadratureGrid(std::vector<double> nodes, std::vector<double> weights,
                               std::vector<Panel> panels, WeightKind kind)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), panels_(std::move(panels)), kind_(kind) {
  if (nodes_.size() != weights_.size() || panels_.empty())
    throw ParameterError("QuadratureGrid: inconsistent node/weight/panel data");
  panel_index_.assign(nodes_.size(), 0);
  std::size_t expected = 0;
  for (std::size_t p = 0; p < panels_.size(); ++p) {
    const Panel& pan = panels_[p];
    if (pan.first != expected || pan.first + pan.count > nodes_.size() || !(pan.left < pan.right))
      throw ParameterError("QuadratureGrid: malformed panel table");
    for (std::size_t i = pan.first; i < pan.first + pan.count; ++i) panel_index_[i] = p;
    expected += pan.count;
  }
  if (expected != nodes_.size()) throw ParameterError("QuadratureGrid: panels do not cover all nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(weights_[i] > 0.0)) throw ParameterError("QuadratureGrid: non-positive weight");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) throw ParameterError("QuadratureGrid: nodes not increasing");
  }
}

double QuadratureGrid::measure() const {
  double a = left(), b = right();
  return kind_ == WeightKind::radial ? 0.5 * (b * b - a * a) : b - a;
}

QuadratureGrid gauss_legendre_panels(double a, double b, int n_panels, int nodes_per_panel,
                                     WeightKind kind, std::span<const double> breakpoints) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw ParameterError("gauss_legendre_panels: need finite a < b");
  if (n_panels < 1) throw ParameterError("gauss_legendre_panels: n_panels must be >= 1");
  if (nodes_per_panel < 2 || nodes_per_panel > 64)
    throw ParameterError("gauss_legendre_panels: nodes_per_panel must be in [2, 64], got " +
                         std::to_string(nodes_per_panel));
  if (kind == WeightKind::radial && a < 0.0)
    throw ParameterError("gauss_legendre_panels: radial measure needs a >= 0");

  std::vector<double> edges;
  edges.reserve(n_panels + 1 + breakpoints.size());
  const double h = (b - a) / n_panels;
  for (int p = 0; p <= n_panels; ++p) edges.push_back(p == n_panels ? b : a + p * h);
  const double snap = 1e-12 * (b - a);
  for (double bp : breakpoints) {
    if (!(bp > a + snap && bp < b - snap)) continue;
    auto it = std::lower_bound(edges.begin(), edges.end(), bp);
    bool close = (it != edges.end() && std::abs(*it - bp) <= snap) ||
                 (it != edges.begin() && std::abs(*(it - 1) - bp) <= snap);
    if (close) {
      // move the nearby uniform edge onto the breakpoint
      auto near = (it != edges.end() && std::abs(*it - bp) <= snap) ? it : it - 1;
      if (near != edges.begin() && near != edges.end() - 1) *near = bp;
      continue;
    }
    edges.insert(it, bp);
  }

  return gauss_legendre_on_edges(edges, nodes_per_panel, kind);
}

QuadratureGrid gauss_legendre_on_edges(std::span<const double> edges, int nodes_per_panel, WeightKind kind) {
  if (edges.size() < 2) throw ParameterError("gauss_legendre_on_edges: need at least two edges");
  if (nodes_per_panel < 2 || nodes_per_panel > 64)
    throw ParameterError("gauss_legendre_on_edges: nodes_per_panel must be in [2, 64], got " +
                         std::to_string(nodes_per_panel));
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (!(edges[i] < edges[i + 1]) || !std::isfinite(edges[i + 1]))
      throw ParameterError("gauss_legendre_on_edges: edges must be finite and strictly increasing");
  if (kind == WeightKind::radial && edges.front() < 0.0)
    throw ParameterError("gauss_legendre_on_edges: radial measure needs a >= 0");

  const QuadratureRule rule = gauss_legendre_rule(nodes_per_panel);
  std::vector<double> nodes, weights;
  std::vector<Panel> panels;
  nodes.reserve((edges.size() - 1) * nodes_per_panel);
  weights.reserve(nodes.capacity());
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double l = edges[p], r = edges[p + 1];
    const double mid = 0.5 * (l + r), half = 0.5 * (r - l);
    panels.push_back(Panel{l, r, nodes.size(), static_cast<std::size_t>(nodes_per_panel)});
    for (int k = 0; k < nodes_per_panel; ++k) {
      double x = mid + half * rule.nodes[k];
      double w = half * rule.weights[k];
      if (kind == WeightKind::radial) w *= x;
      nodes.push_back(x);
      weights.push_back(w);
    }
  }
  return QuadratureGrid(std::move(nodes), std::move(weights), std::move(panels), kind);
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) w[j] /= (nodes[j] - nodes[k]);
  }
  // rescale to avoid overflow for many nodes on short panels
  double m = 0.0;
  for (double v : w) m = std::max(m, std::abs(v));
  for (double& v : w) v /= m;
  return w;
}

void lagrange_basis(std::span<const double> nodes, std::span<const double> bary, double t,
                    std::span<double> out) {
  const std::size_t n = nodes.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (t == nodes[j]) {
      std::fill(out.begin(), out.end(), 0.0);
      out[j] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = bary[j] / (t - nodes[j]);
    denom += out[j];
  }
  for (std::size_t j = 0; j < n; ++j) out[j] /= denom;
}

void lagrange_basis_derivative(std::span<const double> nodes, std::span<const double> bary, double t,
                               std::span<double> out) {
  const std::size_t n = nodes.size();
  std::vector<double> l(n);
  lagrange_basis(nodes, bary, t, l);
  for (std::size_t j = 0; j < n; ++j) {
    if (t == nodes[j]) {
      // l_k'(x_j) = (b_k / b_j) / (x_j - x_k), diagonal by row-sum zero
      double diag = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        out[k] = (bary[k] / bary[j]) / (nodes[j] - nodes[k]);
        diag -= out[k];
      }
      out[j] = diag;
      return;
    }
  }
  // l_k'(t) = l_k(t) * (1/(t-x_k) - sum_j (b_j/(t-x_j)) / sum_j b_j/(t-x_j) )
  double s = 0.0, s2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double q = bary[j] / (t - nodes[j]);
    s += q;
    s2 += q / (t - nodes[j]);
  }
  const double r = s2 / s;
  for (std::size_t k = 0; k < n; ++k) out[k] = l[k] * (r - 1.0 / (t - nodes[k]));
}

}  // namespace detlab
