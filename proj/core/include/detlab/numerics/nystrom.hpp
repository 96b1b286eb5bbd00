#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "detlab/numerics/matrix.hpp"
#include "detlab/numerics/quadrature.hpp"
#include "detlab/numerics/types.hpp"

namespace detlab {

// Sub-quadrature used for the panel that contains node i: the panel is split
// at x_i and each half gets its own Gauss rule, so kernels with a kink on the
// diagonal are integrated against the panel's Lagrange basis to full order.
struct RowCorrection {
  std::vector<std::size_t> points;  // indices into NystromPlan::abscissae()
  std::vector<double> weights;      // include the radial factor when applicable
  std::vector<double> basis;        // points.size() x panel size, row-major
};

class NystromPlan {
 public:
  NystromPlan(QuadratureGrid grid, int sub_nodes);

  const QuadratureGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }
  int sub_nodes() const noexcept { return sub_nodes_; }

  // Every abscissa at which kernels get sampled; strictly increasing.
  const std::vector<double>& abscissae() const noexcept { return abscissae_; }
  std::size_t node_point(std::size_t i) const { return node_point_[i]; }
  const RowCorrection& row(std::size_t i) const { return rows_[i]; }

  std::vector<cplx> sample(const std::function<cplx(double)>& fn) const;
  std::vector<cplx> sample_nodes(const std::function<cplx(double)>& fn) const;

 private:
  QuadratureGrid grid_;
  int sub_nodes_;
  std::vector<double> abscissae_;
  std::vector<std::size_t> node_point_;
  std::vector<RowCorrection> rows_;
};

// G(x, y) = inner(min(x, y)) * outer(max(x, y)) / denominator, with the two
// factors sampled on the abscissae of a plan.
class SemiSeparableKernel {
 public:
  SemiSeparableKernel(std::vector<ScaledValue> inner, std::vector<ScaledValue> outer, ScaledValue denominator);

  std::size_t size() const noexcept { return inner_.size(); }
  // a, b are abscissa indices
  cplx operator()(std::size_t a, std::size_t b) const;

  const ScaledValue& inner(std::size_t a) const { return inner_[a]; }
  const ScaledValue& outer(std::size_t a) const { return outer_[a]; }
  const ScaledValue& denominator() const noexcept { return denom_; }

 private:
  std::vector<ScaledValue> inner_;
  std::vector<ScaledValue> outer_;
  ScaledValue denom_;
  cplx inv_denom_;
};

// A_ij: integral operator of G acting on node values; product-integrated on
// the diagonal panel, plain quadrature elsewhere.
ComplexMatrix corrected_operator(const NystromPlan& plan, const SemiSeparableKernel& g);

struct KernelTraces {
  cplx trace;          // integral of V(x) G(x, x)
  cplx trace_square;   // double integral of V(x) G(x, y) V(y) G(y, x)
  double hs_norm = 0;  // Hilbert-Schmidt norm of |V|^{1/2} G |V|^{1/2}
};

// potential: V sampled on plan.abscissae()
KernelTraces kernel_traces(const NystromPlan& plan, const SemiSeparableKernel& g, std::span<const cplx> potential);

// Discretized Birman-Schwinger operator K = u G v. Its matrix is held in the
// weight-symmetrized form S = W^{1/2} K W^{-1/2}; determinants combine
// det(I + S) with the exact traces of K and K^2, which removes the
// low-order error that the near-diagonal correction leaves in tr S and tr S^2.
class BirmanSchwingerOperator {
 public:
  // u, v at the grid nodes; potential = u v on every plan abscissa.
  BirmanSchwingerOperator(const NystromPlan& plan, const SemiSeparableKernel& g, std::span<const cplx> u,
                          std::span<const cplx> v, std::span<const cplx> potential);

  const ComplexMatrix& matrix() const noexcept { return s_; }
  const ComplexMatrix& green_operator() const noexcept { return a_; }
  const KernelTraces& traces() const noexcept { return traces_; }

  cplx det() const;   // det(I + K)
  cplx det2() const;  // det(I + K) exp(-tr K)

  // (I + K)^{-1} g for node values g. Throws SingularityError near spectrum.
  std::vector<cplx> solve(std::span<const cplx> rhs) const;

  // u .* (A f) and A (v .* f) at the nodes.
  std::vector<cplx> apply_u_green(std::span<const cplx> f) const;
  std::vector<cplx> apply_green(std::span<const cplx> f) const { return a_.apply(f); }

  std::span<const cplx> u() const noexcept { return u_; }
  std::span<const cplx> v() const noexcept { return v_; }

 private:
  ComplexMatrix a_;
  ComplexMatrix s_;
  std::vector<double> sqrt_w_;
  std::vector<cplx> u_;
  std::vector<cplx> v_;
  KernelTraces traces_;
  cplx log_correction_det2_;  // -(tau2 - tr S^2)/2 - tr S
  std::optional<LuFactorization> lu_;
};

// Quadrature of node values against the grid weights.
cplx integrate_nodes(const QuadratureGrid& grid, std::span<const cplx> values);

}  // namespace detlab
