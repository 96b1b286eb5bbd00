#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "detlab/disk/modes.hpp"
#include "detlab/disk/radial_potential.hpp"
#include "detlab/halfline/birman_schwinger.hpp"
#include "detlab/halfline/potential.hpp"
#include "detlab/halfline/solutions.hpp"
#include "detlab/halfline/spectral_point.hpp"
#include "detlab/numerics/identity.hpp"
#include "detlab/verify/identities.hpp"
#include "oracles.hpp"

using namespace detlab;

// Generators are seeded so that failures reproduce; each property runs a
// few dozen random cases.

TEST(Property, RatioIdentityAtRandomEnergies) {
  oracle::Generator gen(2024);
  for (int i = 0; i < 8; ++i) {
    const double depth = gen.uniform(0.2, 2.0), width = gen.uniform(0.3, 2.0);
    const Potential1D V = square_well(depth, width);
    const cplx z = gen.spectral_point(0.5, 8.0);
    const IdentityReport r = verify_ratio_1d(V, sqrt_principal(z));
    EXPECT_TRUE(r.converged) << "depth=" << depth << " width=" << width << " z=" << z << " rel=" << r.rel_residual;
  }
}

TEST(Property, JostPaisAtRandomEnergies) {
  oracle::Generator gen(7);
  for (int i = 0; i < 6; ++i) {
    const cplx amp{gen.uniform(-3.0, 1.0), gen.uniform(-1.0, 1.0)};
    const Potential1D V = exponential_potential(amp, gen.uniform(0.8, 3.0));
    const cplx z = gen.spectral_point(0.5, 8.0);
    const Boundary bc = gen.integer(0, 1) ? Boundary::neumann : Boundary::dirichlet;
    const IdentityReport r = verify_jost_pais(V, sqrt_principal(z), bc);
    EXPECT_TRUE(r.converged) << "amp=" << amp << " z=" << z << " rel=" << r.rel_residual;
  }
}

TEST(Property, RealPotentialConjugationSymmetry) {
  oracle::Generator gen(11);
  const Potential1D V = exponential_potential(-2.0, 1.0);
  const QuadratureGrid g = halfline_grid(V, Discretization{}, 0);
  for (int i = 0; i < 10; ++i) {
    const cplx z = gen.spectral_point(0.3, 10.0);
    const cplx a = fredholm_det_halfline_at(V, sqrt_principal(z), Boundary::dirichlet, g);
    const cplx b = fredholm_det_halfline_at(V, sqrt_principal(std::conj(z)), Boundary::dirichlet, g);
    EXPECT_LT(std::abs(a - std::conj(b)), 1e-12 * std::abs(a)) << z;
  }
}

TEST(Property, MFunctionsAreNegativeReciprocals) {
  oracle::Generator gen(5);
  for (int i = 0; i < 20; ++i) {
    const Potential1D V = square_well(gen.uniform(-1.0, 1.0), gen.uniform(0.1, 3.0));
    const SpectralPoint p = sqrt_principal(gen.spectral_point(0.2, 20.0));
    EXPECT_LT(std::abs(m_function(V, p, Boundary::dirichlet) * m_function(V, p, Boundary::neumann) + 1.0), 1e-12);
  }
}

TEST(Property, CommutedDeterminantsAgree) {
  oracle::Generator gen(13);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 12));
    const std::size_t m = static_cast<std::size_t>(gen.integer(1, 12));
    const IdentityReport r = commuted_det_identity_check(gen.matrix(n, m, 0.3), gen.matrix(m, n, 0.3));
    EXPECT_TRUE(r.converged) << n << "x" << m << " rel=" << r.rel_residual;
  }
}

TEST(Property, ModeDtnEvenInMode) {
  oracle::Generator gen(17);
  const RadialPotential2D V = radial_gaussian(-4.0, 0.25);
  for (int i = 0; i < 10; ++i) {
    const int ell = gen.integer(1, 60);
    const SpectralPoint p = sqrt_principal(gen.spectral_point(0.5, 10.0));
    EXPECT_EQ(dtn_mode(ell, V, p), dtn_mode(-ell, V, p)) << ell;
  }
}

TEST(Property, FreeDtnMatchesBessel) {
  oracle::Generator gen(19);
  for (int i = 0; i < 20; ++i) {
    const int ell = gen.integer(0, 25);
    const double kappa = gen.uniform(0.1, 4.0), R = gen.uniform(0.5, 2.0);
    const double expected = oracle::free_disk_dtn(ell, kappa, R);
    const cplx got = free_dtn_mode(ell, R, sqrt_principal(-kappa * kappa));
    EXPECT_LT(std::abs(got - expected), 1e-9 * std::abs(expected)) << ell << " " << kappa << " " << R;
  }
}
