#include <gtest/gtest.h>

#include <cmath>

#include "s2kit/admissibility.hpp"

using namespace s2kit;

TEST(Admissibility, RadialBall) {
  const RadialProfile p = solve_radial(3, 1.0, SourceTerm::constant(1.0), SolveConfig{});
  const AdmissibilityReport r = admissibility_report(p);
  EXPECT_TRUE(r.admissible) << r.reason;
  EXPECT_EQ(r.nodes, p.size() - 1);
  EXPECT_NEAR(r.min_s1, std::sqrt(3.0), 1e-7);
  EXPECT_NEAR(r.min_s2, 1.0, 1e-7);
  EXPECT_NEAR(r.min_cofactor_eigenvalue, 2.0 / std::sqrt(3.0), 1e-7);
  EXPECT_LT(r.max_u, 0.0);
}

TEST(Admissibility, Disk) {
  SolveConfig cfg;
  cfg.h = 1.0 / 32;
  const ScalarField2D s = solve_grid2d(DomainSpec::disk(1.0), SourceTerm::constant(1.0), cfg);
  const AdmissibilityReport r = admissibility_report(s);
  EXPECT_TRUE(r.admissible) << r.reason;
  EXPECT_EQ(r.nodes, s.u.size());
  EXPECT_NEAR(r.min_cofactor_eigenvalue, 1.0, 1e-8);
  EXPECT_NEAR(r.min_s2, 1.0, 1e-8);
}

TEST(Admissibility, RejectsNegativeLaplacian) {
  Jet j;
  j.value = -0.5;
  j.gradient = {0.0, 0.0};
  j.hessian = SymmetricMatrix::diagonal({-1.0, -1.0});  // S2 = 1 but S1 < 0
  const std::vector<Jet> jets{j};
  const AdmissibilityReport r = admissibility_report(jets);
  EXPECT_FALSE(r.admissible);
  EXPECT_LT(r.min_s1, 0.0);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Admissibility, RejectsPositiveValue) {
  Jet j;
  j.value = 0.1;
  j.gradient = {0.0, 0.0, 0.0};
  j.hessian = SymmetricMatrix::identity(3);
  const std::vector<Jet> jets{j};
  EXPECT_FALSE(admissibility_report(jets).admissible);
}

TEST(Admissibility, JetCounts) {
  const RadialProfile p = solve_radial(4, 1.0, SourceTerm::constant(1.0), SolveConfig{});
  EXPECT_EQ(solution_jets(p).size(), p.size() - 1);
  EXPECT_EQ(solution_jets(p).front().gradient.size(), 4u);
}
