#include "detlab/verify/spectral_element.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <utility>

#include "detlab/numerics/errors.hpp"
#include "detlab/numerics/quadrature.hpp"

namespace detlab {

namespace {

using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

std::vector<double> element_edges(double a, double b, std::span<const double> breakpoints, double h) {
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> edges{a};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int n = std::max(1, static_cast<int>(std::ceil((cuts[i + 1] - cuts[i]) / h - 1e-12)));
    for (int k = 1; k <= n; ++k) edges.push_back(cuts[i] + (cuts[i + 1] - cuts[i]) * k / n);
  }
  return edges;
}

// Global stiffness, mass and potential matrices (potential includes the
// centrifugal term) with node 0 at x = a and the last node at x = b.
struct Assembled {
  RMat stiffness;
  RMat mass;
  CMat potential;
  RMat centrifugal;
};

Assembled assemble(const std::vector<double>& edges, int order, bool radial, double ell2,
                   const std::function<cplx(double)>& V) {
  if (order < 2 || order > 30) throw ParameterError("spectral element: order must be in [2, 30]");
  const QuadratureRule gll = gauss_lobatto_rule(order + 1);
  const QuadratureRule gl = gauss_legendre_rule(order + 4);
  const std::vector<double> bary = barycentric_weights(gll.nodes);
  const std::size_t p = static_cast<std::size_t>(order);
  const std::size_t ne = edges.size() - 1;
  const std::size_t n = ne * p + 1;
  Assembled a{RMat::Zero(n, n), RMat::Zero(n, n), CMat::Zero(n, n), RMat::Zero(n, n)};

  std::vector<double> phi(p + 1), dphi(p + 1);
  for (std::size_t e = 0; e < ne; ++e) {
    const double x0 = edges[e];
    const double h = edges[e + 1] - x0;
    const std::size_t base = e * p;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double t = gl.nodes[q];
      const double x = x0 + 0.5 * (t + 1.0) * h;
      const double w = gl.weights[q] * 0.5 * h * (radial ? x : 1.0);
      lagrange_basis(gll.nodes, bary, t, phi);
      lagrange_basis_derivative(gll.nodes, bary, t, dphi);
      const cplx vx = V(x);
      const double cf = radial ? ell2 / (x * x) : 0.0;
      for (std::size_t i = 0; i <= p; ++i)
        for (std::size_t j = 0; j <= p; ++j) {
          const double pp = w * phi[i] * phi[j];
          a.stiffness(base + i, base + j) += w * dphi[i] * dphi[j] * 4.0 / (h * h);
          a.mass(base + i, base + j) += pp;
          a.potential(base + i, base + j) += vx * pp;
          a.centrifugal(base + i, base + j) += cf * pp;
        }
    }
  }
  return a;
}

std::vector<double> generalized_eigenvalues(const RMat& A, const RMat& B, std::size_t lo, std::size_t hi,
                                            double z_lo, double z_hi) {
  const Eigen::Index m = static_cast<Eigen::Index>(hi - lo);
  RMat a = A.block(lo, lo, m, m);
  RMat b = B.block(lo, lo, m, m);
  Eigen::GeneralizedSelfAdjointEigenSolver<RMat> es(a, b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("spectral element eigensolve failed", {});
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double z = es.eigenvalues()(i);
    if (z > z_lo && z < z_hi) out.push_back(z);
  }
  return out;
}

void check_range(double z_lo, double z_hi) {
  if (!(z_lo < z_hi)) throw ParameterError("spectral element: empty eigenvalue window");
}

}  // namespace

std::vector<double> halfline_sem_eigenvalues(const Potential1D& V, Boundary bc, double length, double z_lo,
                                             double z_hi, const SpectralElementOptions& opts) {
  if (!V.real_valued) throw ParameterError("halfline_sem_eigenvalues: V must be real");
  if (!(length > 0.0)) throw ParameterError("halfline_sem_eigenvalues: length must be positive");
  check_range(z_lo, z_hi);
  const auto edges = element_edges(0.0, length, V.breakpoints, opts.element_size);
  const Assembled a = assemble(edges, opts.order, false, 0.0, V.eval);
  const RMat A = a.stiffness + a.potential.real();
  const std::size_t n = static_cast<std::size_t>(A.rows());
  return generalized_eigenvalues(A, a.mass, bc == Boundary::dirichlet ? 1 : 0, n - 1, z_lo, z_hi);
}

std::vector<double> radial_sem_eigenvalues(const RadialPotential2D& V, int ell, Boundary bc, double z_lo, double z_hi,
                                           const SpectralElementOptions& opts) {
  if (!V.real_valued) throw ParameterError("radial_sem_eigenvalues: V must be real");
  check_range(z_lo, z_hi);
  const auto edges = element_edges(0.0, V.R, V.breakpoints, opts.element_size);
  const double l2 = static_cast<double>(ell) * ell;
  const Assembled a = assemble(edges, opts.order, true, l2, V.eval);
  const RMat A = a.stiffness + a.centrifugal + a.potential.real();
  const std::size_t n = static_cast<std::size_t>(A.rows());
  return generalized_eigenvalues(A, a.mass, ell == 0 ? 0 : 1, bc == Boundary::dirichlet ? n - 1 : n, z_lo, z_hi);
}

ModeOracle radial_sem_mode_oracle(const RadialPotential2D& V, int ell, const SpectralPoint& pt,
                                  const SpectralElementOptions& opts) {
  const auto edges = element_edges(0.0, V.R, V.breakpoints, opts.element_size);
  const double l2 = static_cast<double>(ell) * ell;
  const Assembled a = assemble(edges, opts.order, true, l2, V.eval);
  const double R = V.R;
  const Eigen::Index n = a.stiffness.rows();
  const Eigen::Index lo = ell == 0 ? 0 : 1;
  const Eigen::Index last = n - 1;
  const Eigen::Index ni = last - lo;  // interior unknowns

  const CMat K0 = (a.stiffness + a.centrifugal).cast<cplx>() - pt.z * a.mass.cast<cplx>();
  const CMat K = K0 + a.potential;
  const CMat& MV = a.potential;

  Eigen::PartialPivLU<CMat> k0_int(K0.block(lo, lo, ni, ni));
  Eigen::PartialPivLU<CMat> k_int(K.block(lo, lo, ni, ni));

  auto embed = [&](const CVec& interior, cplx at_R) {
    CVec full = CVec::Zero(n);
    full.segment(lo, ni) = interior;
    full(last) = at_R;
    return full;
  };
  // R h'(R) for h = (H^D - z)^{-1} f, f given through the load M f_nodes
  auto flux = [&](const CMat& op, Eigen::PartialPivLU<CMat>& lu, const CVec& load) {
    CVec h = embed(lu.solve(load.segment(lo, ni)), 0.0);
    const cplx f = (op.row(last) * h)(0) - load(last);
    return std::pair<cplx, CVec>{f, std::move(h)};
  };

  ModeOracle o;
  // u(R) = 1
  {
    CVec u = embed(-k_int.solve(K.block(lo, last, ni, 1)), 1.0);
    o.m = -(K.row(last) * u)(0) / R;
    CVec u0 = embed(-k0_int.solve(K0.block(lo, last, ni, 1)), 1.0);
    o.m0 = -(K0.row(last) * u0)(0) / R;
  }
  // free Neumann column: K0 c = e_R on all unconstrained nodes
  CVec c = CVec::Zero(n);
  {
    CVec rhs = CVec::Zero(ni + 1);
    rhs(ni) = 1.0;
    c.segment(lo, ni + 1) = K0.block(lo, lo, ni + 1, ni + 1).partialPivLu().solve(rhs);
  }
  auto [b, h] = flux(K, k_int, MV * c);
  o.b = b;
  o.tau = flux(K0, k0_int, MV * h).first;

  // d_r G0^D(R, .) is free with value -1/R at R
  CVec ad = embed(k0_int.solve(K0.block(lo, last, ni, 1) * (1.0 / R)), -1.0 / R);
  o.dtn_difference = flux(K, k_int, MV * ad).first;
  return o;
}

}  // namespace detlab
