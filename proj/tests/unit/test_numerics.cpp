#include <gtest/gtest.h>

#include <cmath>

#include "detlab/numerics/errors.hpp"
#include "detlab/numerics/identity.hpp"
#include "detlab/numerics/matrix.hpp"
#include "detlab/numerics/ode.hpp"
#include "detlab/numerics/quadrature.hpp"
#include "detlab/numerics/refinement.hpp"
#include "oracles.hpp"

using namespace detlab;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  oracle::Generator gen(11);
  for (int n : {1, 2, 5, 12, 25, 40}) {
    const QuadratureRule r = gauss_legendre_rule(n);
    for (int trial = 0; trial < 20; ++trial) {
      const int deg = gen.integer(0, 2 * n - 1);
      std::vector<double> c(deg + 1);
      for (double& x : c) x = gen.uniform(-1, 1);
      double q = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        double p = 0.0;
        for (int k = deg; k >= 0; --k) p = p * r.nodes[i] + c[k];
        q += r.weights[i] * p;
      }
      double exact = 0.0;
      for (int k = 0; k <= deg; k += 2) exact += 2.0 * c[k] / (k + 1);
      EXPECT_NEAR(q, exact, 1e-13 * (1 + std::abs(exact))) << "n=" << n << " deg=" << deg;
    }
  }
}

TEST(GaussLegendre, RejectsBadOrder) { EXPECT_THROW(gauss_legendre_rule(0), ParameterError); }

TEST(GaussLobatto, EndpointsAndExactness) {
  const QuadratureRule r = gauss_lobatto_rule(9);
  EXPECT_DOUBLE_EQ(r.nodes.front(), -1.0);
  EXPECT_DOUBLE_EQ(r.nodes.back(), 1.0);
  // exact through degree 2n - 3 = 15
  double q = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) q += r.weights[i] * std::pow(r.nodes[i], 14);
  EXPECT_NEAR(q, 2.0 / 15.0, 1e-14);
}

TEST(PanelGrid, MeasureAndBreakpoints) {
  const std::vector<double> bps{0.3, 1.7};
  const QuadratureGrid g = gauss_legendre_panels(0.0, 2.0, 4, 8, WeightKind::lebesgue, bps);
  double s = 0.0;
  for (double w : g.weights()) s += w;
  EXPECT_NEAR(s, 2.0, 1e-14);
  bool saw03 = false, saw17 = false;
  for (const Panel& p : g.panels()) {
    saw03 = saw03 || p.left == 0.3;
    saw17 = saw17 || p.right == 1.7;
  }
  EXPECT_TRUE(saw03 && saw17);

  const QuadratureGrid r = gauss_legendre_panels(0.0, 1.5, 3, 10, WeightKind::radial);
  double m = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) m += r.weights()[i] * r.nodes()[i] * r.nodes()[i];
  EXPECT_NEAR(m, std::pow(1.5, 4) / 4.0, 1e-13);  // integral of r^2 r dr
  EXPECT_NEAR(r.measure(), 1.125, 1e-14);
}

TEST(Lagrange, ReproducesPolynomial) {
  const QuadratureRule r = gauss_lobatto_rule(7);
  const auto bary = barycentric_weights(r.nodes);
  std::vector<double> phi(r.nodes.size()), dphi(r.nodes.size());
  const double t = 0.37;
  lagrange_basis(r.nodes, bary, t, phi);
  lagrange_basis_derivative(r.nodes, bary, t, dphi);
  double v = 0.0, d = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    v += phi[i] * std::pow(r.nodes[i], 5);
    d += dphi[i] * std::pow(r.nodes[i], 5);
  }
  EXPECT_NEAR(v, std::pow(t, 5), 1e-14);
  EXPECT_NEAR(d, 5 * std::pow(t, 4), 1e-13);
}

TEST(Determinant, KnownValues) {
  ComplexMatrix m(2, 2);
  m(0, 0) = {1, 1};
  m(0, 1) = 2;
  m(1, 0) = {0, 3};
  m(1, 1) = 4;
  // (1+i)4 - 2(3i) = 4 - 2i
  const cplx d = det_lu(m);
  EXPECT_NEAR(std::abs(d - cplx(4, -2)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(det_lu(ComplexMatrix::identity(17)) - 1.0), 0.0, 0.0);
}

TEST(Determinant, Det2DiagonalClosedForm) {
  oracle::Generator gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 30));
    ComplexMatrix a(n, n);
    cplx expect = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = gen.complex(0.5);
      expect *= (1.0 + a(i, i)) * std::exp(-a(i, i));
    }
    EXPECT_LE(std::abs(det2_from_matrix(a) - expect), 1e-13 * std::abs(expect));
  }
}

TEST(Determinant, CommutedProductProperty) {
  oracle::Generator gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 12));
    const std::size_t m = static_cast<std::size_t>(gen.integer(1, 12));
    const ComplexMatrix a = gen.matrix(n, m, 0.4);
    const ComplexMatrix b = gen.matrix(m, n, 0.4);
    const IdentityReport r = commuted_det_identity_check(a, b);
    EXPECT_TRUE(r.converged) << "trial " << trial << " rel " << r.rel_residual;
  }
}

TEST(LinearSolve, SingularMatrixThrows) {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  const std::vector<cplx> rhs{1.0, 1.0};
  EXPECT_THROW(solve_linear(m, rhs), SingularityError);
}

TEST(LinearSolve, ResidualSmall) {
  oracle::Generator gen(7);
  const ComplexMatrix m = ComplexMatrix::identity(20) + gen.matrix(20, 20, 0.2);
  std::vector<cplx> rhs(20);
  for (auto& x : rhs) x = gen.complex(1.0);
  const auto x = solve_linear(m, rhs);
  const auto back = m.apply(x);
  for (std::size_t i = 0; i < rhs.size(); ++i) EXPECT_LT(std::abs(back[i] - rhs[i]), 1e-13);
}

TEST(Ode, HarmonicOscillator) {
  // y'' = -y, y(0) = 0, y'(0) = 1
  const auto s = ode_second_order([](double) { return cplx(-1.0); }, 0.0, 10.0, 0.0, 1.0, 1e-12,
                                  std::vector<double>{1.0, 5.0});
  ASSERT_EQ(s.x.size(), 4u);
  EXPECT_NEAR(std::abs(s.y[1] - std::sin(1.0)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(s.y[2] - std::sin(5.0)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(s.dy.back() - std::cos(10.0)), 0.0, 1e-10);
}

TEST(Ode, GrowingSolutionStaysFinite) {
  // y'' = 400 y over (0, 10): e^{200} would overflow a naive double state
  ScaledState start;
  start.y = {1.0, 20.0};
  const std::vector<double> stops{10.0};
  const auto out = integrate_linear(
      [](double, const OdeVector& y) { return OdeVector{y[1], 400.0 * y[0]}; }, 0.0, start, stops);
  ASSERT_EQ(out.size(), 1u);
  const double log_y = std::log(std::abs(out[0].y[0])) + out[0].log_scale;
  EXPECT_NEAR(log_y, 200.0, 1e-9);
}

TEST(Ode, RejectsLooseTolerance) {
  EXPECT_THROW(ode_second_order([](double) { return cplx(-1.0); }, 0.0, 1.0, 0.0, 1.0, 1e-3), ParameterError);
}

TEST(Refinement, StopsWhenSuccessiveValuesAgree) {
  // value_k = 1 + 2^{-4k}
  const auto r = refine_determinant(
      [](int k) { return std::pair<std::size_t, cplx>(16u << k, 1.0 + std::pow(2.0, -4.0 * k)); },
      DeterminantKind::det1, RefinementPolicy{1e-6, 8});
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.error_estimate, 1e-6);
  EXPECT_EQ(r.values_per_grid.size(), r.grid_sizes.size());
}

TEST(Refinement, ReportsNonConvergence) {
  const auto r = refine_determinant([](int k) { return std::pair<std::size_t, cplx>(k + 1, double(k)); },
                                    DeterminantKind::det1, RefinementPolicy{1e-8, 2});
  EXPECT_FALSE(r.converged);
  EXPECT_THROW(require_converged(r), ConvergenceError);
}

TEST(IdentityReport, ResidualDefinition) {
  IdentityReport r;
  r.sides = {{"a", 1.0, "x"}, {"b", 1.0 + 1e-7, "y"}, {"c", 1.0 - 1e-7, "z"}};
  finalize_report(r, 1e-6);
  EXPECT_NEAR(r.abs_residual, 2e-7, 1e-15);
  EXPECT_NEAR(r.rel_residual, 2e-7 / (1.0 + 1e-7), 1e-15);
  EXPECT_TRUE(r.converged);
  finalize_report(r, 1e-7);
  EXPECT_FALSE(r.converged);

  IdentityReport zero;
  zero.sides = {{"a", 0.0, "x"}, {"b", 0.0, "y"}};
  finalize_report(zero, 1e-6);
  EXPECT_EQ(zero.rel_residual, 0.0);
  EXPECT_TRUE(zero.converged);
}
