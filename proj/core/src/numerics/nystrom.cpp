#include "detlab/numerics/nystrom.hpp"

#include <algorithm>
#include <cmath>

#include "detlab/numerics/errors.hpp"

namespace detlab {

NystromPlan::NystromPlan(QuadratureGrid grid, int sub_nodes) : grid_(std::move(grid)), sub_nodes_(sub_nodes) {
  if (sub_nodes < 2 || sub_nodes > 128) throw ParameterError("NystromPlan: sub_nodes must be in [2, 128]");
  const std::size_t n = grid_.size();
  const bool radial = grid_.weight_kind() == WeightKind::radial;
  const QuadratureRule rule = gauss_legendre_rule(sub_nodes);
  const auto& x = grid_.nodes();

  std::vector<std::vector<double>> bary(grid_.panels().size());
  for (std::size_t p = 0; p < grid_.panels().size(); ++p) {
    const Panel& pan = grid_.panels()[p];
    bary[p] = barycentric_weights(std::span<const double>(x.data() + pan.first, pan.count));
  }

  std::vector<std::vector<double>> sub_x(n);
  rows_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Panel& pan = grid_.panels()[grid_.panel_of(i)];
    RowCorrection& rc = rows_[i];
    auto& pts = sub_x[i];
    pts.reserve(2 * sub_nodes);
    rc.weights.reserve(2 * sub_nodes);
    for (int side = 0; side < 2; ++side) {
      const double l = side == 0 ? pan.left : x[i];
      const double r = side == 0 ? x[i] : pan.right;
      const double mid = 0.5 * (l + r), half = 0.5 * (r - l);
      for (int k = 0; k < sub_nodes; ++k) {
        double y = mid + half * rule.nodes[k];
        double w = half * rule.weights[k];
        if (radial) w *= y;
        pts.push_back(y);
        rc.weights.push_back(w);
      }
    }
    rc.basis.resize(pts.size() * pan.count);
    std::span<const double> pnodes(x.data() + pan.first, pan.count);
    for (std::size_t q = 0; q < pts.size(); ++q)
      lagrange_basis(pnodes, bary[grid_.panel_of(i)], pts[q],
                     std::span<double>(rc.basis.data() + q * pan.count, pan.count));
  }

  abscissae_ = x;
  for (const auto& pts : sub_x) abscissae_.insert(abscissae_.end(), pts.begin(), pts.end());
  std::sort(abscissae_.begin(), abscissae_.end());
  abscissae_.erase(std::unique(abscissae_.begin(), abscissae_.end()), abscissae_.end());
  auto index_of = [this](double v) {
    return static_cast<std::size_t>(std::lower_bound(abscissae_.begin(), abscissae_.end(), v) - abscissae_.begin());
  };
  node_point_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    node_point_[i] = index_of(x[i]);
    rows_[i].points.resize(sub_x[i].size());
    for (std::size_t q = 0; q < sub_x[i].size(); ++q) rows_[i].points[q] = index_of(sub_x[i][q]);
  }
}

std::vector<cplx> NystromPlan::sample(const std::function<cplx(double)>& fn) const {
  std::vector<cplx> out(abscissae_.size());
  for (std::size_t a = 0; a < abscissae_.size(); ++a) out[a] = fn(abscissae_[a]);
  return out;
}

std::vector<cplx> NystromPlan::sample_nodes(const std::function<cplx(double)>& fn) const {
  std::vector<cplx> out(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) out[i] = fn(grid_.nodes()[i]);
  return out;
}

SemiSeparableKernel::SemiSeparableKernel(std::vector<ScaledValue> inner, std::vector<ScaledValue> outer,
                                         ScaledValue denominator)
    : inner_(std::move(inner)), outer_(std::move(outer)), denom_(denominator) {
  if (inner_.size() != outer_.size()) throw ParameterError("SemiSeparableKernel: factor tables differ in size");
  if (denom_.mantissa == cplx{}) throw ParameterError("SemiSeparableKernel: vanishing Wronskian");
  inv_denom_ = 1.0 / denom_.mantissa;
}

cplx SemiSeparableKernel::operator()(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  const ScaledValue& p = inner_[a];
  const ScaledValue& q = outer_[b];
  return p.mantissa * q.mantissa * inv_denom_ * std::exp(p.log_scale + q.log_scale - denom_.log_scale);
}

ComplexMatrix corrected_operator(const NystromPlan& plan, const SemiSeparableKernel& g) {
  const QuadratureGrid& grid = plan.grid();
  const std::size_t n = grid.size();
  const auto& w = grid.weights();
  ComplexMatrix a(n, n);
  std::vector<cplx> gq;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pi = plan.node_point(i);
    for (std::size_t j = 0; j < n; ++j) a(i, j) = g(pi, plan.node_point(j)) * w[j];
    const Panel& pan = grid.panels()[grid.panel_of(i)];
    const RowCorrection& rc = plan.row(i);
    gq.resize(rc.points.size());
    for (std::size_t q = 0; q < rc.points.size(); ++q) gq[q] = g(pi, rc.points[q]) * rc.weights[q];
    for (std::size_t jj = 0; jj < pan.count; ++jj) {
      cplx s = 0.0;
      for (std::size_t q = 0; q < rc.points.size(); ++q) s += gq[q] * rc.basis[q * pan.count + jj];
      a(i, pan.first + jj) = s;
    }
  }
  return a;
}

KernelTraces kernel_traces(const NystromPlan& plan, const SemiSeparableKernel& g, std::span<const cplx> potential) {
  if (potential.size() != plan.abscissae().size())
    throw ParameterError("kernel_traces: potential must be sampled on the plan abscissae");
  const QuadratureGrid& grid = plan.grid();
  const std::size_t n = grid.size();
  const auto& w = grid.weights();
  KernelTraces t;
  double hs2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pi = plan.node_point(i);
    const cplx vi = potential[pi];
    if (vi == cplx{}) continue;
    t.trace += w[i] * vi * g(pi, pi);
    const Panel& pan = grid.panels()[grid.panel_of(i)];
    cplx inner = 0.0;
    double inner_abs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j >= pan.first && j < pan.first + pan.count) continue;
      const std::size_t pj = plan.node_point(j);
      const cplx gij = g(pi, pj);
      inner += w[j] * potential[pj] * gij * gij;
      inner_abs += w[j] * std::abs(potential[pj]) * std::norm(gij);
    }
    const RowCorrection& rc = plan.row(i);
    for (std::size_t q = 0; q < rc.points.size(); ++q) {
      const std::size_t pq = rc.points[q];
      const cplx giq = g(pi, pq);
      inner += rc.weights[q] * potential[pq] * giq * giq;
      inner_abs += rc.weights[q] * std::abs(potential[pq]) * std::norm(giq);
    }
    t.trace_square += w[i] * vi * inner;
    hs2 += w[i] * std::abs(vi) * inner_abs;
  }
  t.hs_norm = std::sqrt(hs2);
  ensure_finite(t.trace, "kernel_traces");
  ensure_finite(t.trace_square, "kernel_traces");
  return t;
}

BirmanSchwingerOperator::BirmanSchwingerOperator(const NystromPlan& plan, const SemiSeparableKernel& g,
                                                 std::span<const cplx> u, std::span<const cplx> v,
                                                 std::span<const cplx> potential)
    : a_(corrected_operator(plan, g)), u_(u.begin(), u.end()), v_(v.begin(), v.end()) {
  const std::size_t n = plan.size();
  if (u.size() != n || v.size() != n) throw ParameterError("BirmanSchwingerOperator: u, v must be node samples");
  traces_ = kernel_traces(plan, g, potential);
  const auto& w = plan.grid().weights();
  sqrt_w_.resize(n);
  for (std::size_t i = 0; i < n; ++i) sqrt_w_[i] = std::sqrt(w[i]);
  s_ = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s_(i, j) = sqrt_w_[i] * u_[i] * a_(i, j) * v_[j] / sqrt_w_[j];

  cplx tr = 0.0, tr2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tr += s_(i, i);
    for (std::size_t j = 0; j < n; ++j) tr2 += s_(i, j) * s_(j, i);
  }
  log_correction_det2_ = -0.5 * (traces_.trace_square - tr2) - tr;
  ComplexMatrix is = s_;
  for (std::size_t i = 0; i < n; ++i) is(i, i) += 1.0;
  lu_.emplace(is);
}

cplx BirmanSchwingerOperator::det2() const {
  return ensure_finite(lu_->determinant() * std::exp(log_correction_det2_), "BirmanSchwingerOperator::det2");
}

cplx BirmanSchwingerOperator::det() const {
  return ensure_finite(lu_->determinant() * std::exp(log_correction_det2_ + traces_.trace),
                       "BirmanSchwingerOperator::det");
}

std::vector<cplx> BirmanSchwingerOperator::solve(std::span<const cplx> rhs) const {
  const std::size_t n = sqrt_w_.size();
  if (rhs.size() != n) throw ParameterError("BirmanSchwingerOperator::solve: wrong length");
  std::vector<cplx> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = sqrt_w_[i] * rhs[i];
  std::vector<cplx> y = lu_->solve(b);
  for (std::size_t i = 0; i < n; ++i) y[i] /= sqrt_w_[i];
  return y;
}

std::vector<cplx> BirmanSchwingerOperator::apply_u_green(std::span<const cplx> f) const {
  std::vector<cplx> y = a_.apply(f);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= u_[i];
  return y;
}

cplx integrate_nodes(const QuadratureGrid& grid, std::span<const cplx> values) {
  if (values.size() != grid.size()) throw ParameterError("integrate_nodes: wrong length");
  cplx s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += grid.weights()[i] * values[i];
  return s;
}

}  // namespace detlab
