#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

#include "detlab/disk/radial_potential.hpp"
#include "detlab/halfline/potential.hpp"
#include "detlab/halfline/spectral_point.hpp"
#include "detlab/numerics/errors.hpp"
#include "detlab/verify/eigen_scan.hpp"
#include "detlab/verify/identities.hpp"
#include "detlab/verify/spectral_element.hpp"

using namespace detlab;

namespace {

const Potential1D exp_v = exponential_potential(-2.0, 1.0);
const Potential1D deep_well = square_well(4.0, 1.0);
const RadialPotential2D gauss = radial_gaussian(-4.0, 0.25);

Discretization disk_disc(int l_max = 40) {
  Discretization d;
  d.n_panels = 8;
  d.nodes_per_panel = 25;
  d.l_max = l_max;
  d.tolerance = 1e-4;
  return d;
}

// V = -4 on (0, 1): the single eigenvalue of each realization, from mpmath
constexpr double well_neumann_eigenvalue = -2.939374931781725;
constexpr double well_dirichlet_eigenvalue = -0.40710148364131133;

}  // namespace

TEST(JostPais, FourRoutesAgreeOnDistinctPipelines) {
  for (Boundary bc : {Boundary::dirichlet, Boundary::neumann}) {
    const IdentityReport r = verify_jost_pais(exp_v, sqrt_principal({-1.0, 1.0}), bc);
    ASSERT_EQ(r.sides.size(), 4u);
    std::set<std::string> pipes;
    for (const auto& s : r.sides) pipes.insert(s.pipeline);
    EXPECT_EQ(pipes.size(), 4u);
    EXPECT_TRUE(r.converged) << r.rel_residual;
    EXPECT_LE(r.rel_residual, r.tolerance);
  }
}

TEST(JostPais, KnownValueAtComplexEnergy) {
  const IdentityReport r = verify_jost_pais(exp_v, sqrt_principal({-1.0, 1.0}), Boundary::dirichlet);
  const cplx expected{0.5319041360069182, -0.10863106308413839};
  for (const auto& s : r.sides) EXPECT_LT(std::abs(s.value - expected), 1e-7) << s.name;
}

TEST(Ratio1d, SidesAgree) {
  const IdentityReport r = verify_ratio_1d(square_well(1.0, 1.0), sqrt_principal(-2.0));
  EXPECT_EQ(r.sides.size(), 4u);
  EXPECT_TRUE(r.converged) << r.rel_residual;
}

TEST(Ratio1d, ResidualShrinksWithGrid) {
  Discretization coarse;
  coarse.n_panels = 4;
  coarse.nodes_per_panel = 6;
  coarse.max_refinements = 0;
  coarse.tolerance = 1e-2;
  Discretization fine = coarse;
  fine.n_panels = 16;
  fine.nodes_per_panel = 12;
  const SpectralPoint p = sqrt_principal({-1.0, 0.5});
  const double rc = verify_ratio_1d(exp_v, p, coarse).rel_residual;
  const double rf = verify_ratio_1d(exp_v, p, fine).rel_residual;
  EXPECT_LT(rf, rc);
}

TEST(Ratio1d, RejectsEnergiesOnTheSpectrum) {
  EXPECT_THROW(verify_ratio_1d(exp_v, sqrt_principal(2.0)), DomainError);
}

TEST(DiskTripleEquality, ThreeSidesAgree) {
  const IdentityReport r = verify_theorem_4_2(gauss, sqrt_principal(-2.0), disk_disc());
  ASSERT_EQ(r.sides.size(), 3u);
  EXPECT_TRUE(r.converged) << r.rel_residual;
  EXPECT_LT(r.rel_residual, 1e-10);
}

TEST(DiskNeumannSideForm, SidesAgree) {
  const IdentityReport r = verify_eq_4_37(gauss, sqrt_principal({-1.0, 0.5}), disk_disc());
  EXPECT_TRUE(r.converged) << r.rel_residual;
}

TEST(ModeIdentities, OneReportPerIdentityAndMode) {
  const auto reports = verify_mode_identities(gauss, sqrt_principal(-1.0), disk_disc(5));
  EXPECT_EQ(reports.size(), 3u * 11u);
  for (const auto& r : reports) EXPECT_TRUE(r.converged) << r.name << " " << r.rel_residual;
}

TEST(HsMembership, NormsFormCauchySequence) {
  const IdentityReport a = verify_hs_membership(exp_v, sqrt_principal(-1.0), Boundary::dirichlet, 3);
  EXPECT_EQ(a.sides.size(), 3u);
  EXPECT_TRUE(a.converged) << a.rel_residual;
  const IdentityReport b = verify_hs_membership(gauss, 2, sqrt_principal(-1.0), Boundary::neumann, 3, disk_disc());
  EXPECT_TRUE(b.converged) << b.rel_residual;
  EXPECT_THROW(verify_hs_membership(exp_v, sqrt_principal(-1.0), Boundary::dirichlet, 2), ParameterError);
  EXPECT_THROW(verify_hs_membership(exp_v, sqrt_principal(-1.0), Boundary::dirichlet, 9), ParameterError);
}

TEST(EigenScan, NeumannRootOfBoundaryScalar) {
  ScanRange range{-4.0, -1e-3, 200};
  const EigenScanResult r = eigenvalue_scan(deep_well, ScanProblem::halfline_neumann, range);
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_NEAR(r.roots[0], well_neumann_eigenvalue, 1e-8);
  ASSERT_EQ(r.oracle_values.size(), 1u);
  EXPECT_NEAR(r.oracle_values[0], well_neumann_eigenvalue, 1e-6);
  // the Dirichlet eigenvalue is a pole of the ratio, not a root
  ASSERT_EQ(r.rejected_poles.size(), 1u);
  EXPECT_NEAR(r.rejected_poles[0], well_dirichlet_eigenvalue, 1e-6);
}

TEST(EigenScan, DirichletRootOfDeterminant) {
  ScanRange range{-4.0, -1e-3, 200};
  const EigenScanResult r = eigenvalue_scan(deep_well, ScanProblem::halfline_dirichlet, range);
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_NEAR(r.roots[0], well_dirichlet_eigenvalue, 1e-8);
  EXPECT_TRUE(r.rejected_poles.empty());
}

TEST(EigenScan, CompleteAgainstOracle) {
  const Potential1D deeper = square_well(30.0, 1.0);
  ScanRange range{-30.0, -0.05, 600};
  const EigenScanResult r = eigenvalue_scan(deeper, ScanProblem::halfline_dirichlet, range);
  EXPECT_EQ(r.roots.size(), r.oracle_values.size());
  const auto nearest = nearest_oracle(r);
  for (std::size_t i = 0; i < r.roots.size(); ++i) EXPECT_NEAR(r.roots[i], nearest[i], 1e-6);
}

TEST(EigenScan, FreeProblemHasNoRoots) {
  const EigenScanResult r = eigenvalue_scan(zero_potential(), ScanProblem::halfline_neumann, ScanRange{});
  EXPECT_TRUE(r.roots.empty());
  EXPECT_TRUE(r.oracle_values.empty());
  EXPECT_TRUE(nearest_oracle(r).empty());
}

TEST(EigenScan, DiskNeumannMode) {
  const EigenScanResult r = eigenvalue_scan(gauss, 0, Boundary::neumann, ScanRange{-10.0, -1e-3, 200}, disk_disc());
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_NEAR(r.roots[0], -0.548413904891, 1e-8);
  ASSERT_EQ(r.oracle_values.size(), 1u);
  EXPECT_NEAR(r.oracle_values[0], r.roots[0], 1e-6);
}

TEST(EigenScan, RejectsBadRange) {
  EXPECT_THROW(eigenvalue_scan(exp_v, ScanProblem::halfline_neumann, ScanRange{-1.0, -2.0, 100}), ParameterError);
  EXPECT_THROW(eigenvalue_scan(exp_v, ScanProblem::halfline_neumann, ScanRange{-1.0, 0.5, 100}), ParameterError);
}

TEST(SpectralElement, HalfLineWellEigenvalues) {
  const auto d = halfline_sem_eigenvalues(deep_well, Boundary::dirichlet, 30.0, -4.0, -0.01);
  const auto n = halfline_sem_eigenvalues(deep_well, Boundary::neumann, 30.0, -4.0, -0.01);
  ASSERT_EQ(d.size(), 1u);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_NEAR(d[0], well_dirichlet_eigenvalue, 1e-6);
  EXPECT_NEAR(n[0], well_neumann_eigenvalue, 1e-6);
}
