#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace detlab {

enum class WeightKind { lebesgue, radial };

// Nodes and weights of a rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre_rule(int n);
// Includes both endpoints; n >= 2.
QuadratureRule gauss_lobatto_rule(int n);

struct Panel {
  double left;
  double right;
  std::size_t first;  // index of the first node in this panel
  std::size_t count;
};

class QuadratureGrid {
 public:
  QuadratureGrid() = default;
  QuadratureGrid(std::vector<double> nodes, std::vector<double> weights, std::vector<Panel> panels,
                 WeightKind kind);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<Panel>& panels() const noexcept { return panels_; }
  WeightKind weight_kind() const noexcept { return kind_; }
  double left() const { return panels_.front().left; }
  double right() const { return panels_.back().right; }
  std::size_t panel_of(std::size_t node) const { return panel_index_[node]; }

  // Exact measure of (left, right) under the declared weight.
  double measure() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<Panel> panels_;
  std::vector<std::size_t> panel_index_;
  WeightKind kind_ = WeightKind::lebesgue;
};

// Composite Gauss-Legendre rule on (a, b) with n_panels equal panels. Any
// breakpoint strictly inside (a, b) becomes an additional panel edge.
QuadratureGrid gauss_legendre_panels(double a, double b, int n_panels, int nodes_per_panel,
                                     WeightKind kind, std::span<const double> breakpoints = {});

// Composite rule on the panels between consecutive strictly increasing edges.
QuadratureGrid gauss_legendre_on_edges(std::span<const double> edges, int nodes_per_panel, WeightKind kind);

// Barycentric weights for Lagrange interpolation on the given nodes.
std::vector<double> barycentric_weights(std::span<const double> nodes);

// Values of every Lagrange basis polynomial at t.
void lagrange_basis(std::span<const double> nodes, std::span<const double> bary, double t,
                    std::span<double> out);

// Derivatives of every Lagrange basis polynomial at t.
void lagrange_basis_derivative(std::span<const double> nodes, std::span<const double> bary, double t,
                               std::span<double> out);

}  // namespace detlab
