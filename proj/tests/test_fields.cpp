#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "s2kit/error.hpp"
#include "s2kit/fields.hpp"

using namespace s2kit;

namespace {

const double kA = 1.0 / (2.0 * std::sqrt(3.0));

std::vector<SyntheticField> menagerie(int dim) {
  std::vector<SyntheticField> out;
  out.push_back(SyntheticField::quadratic(sample_symmetric(dim, dim, 1.0), sample_gaussian_vector(dim + 1, dim), 0.3));
  out.push_back(SyntheticField::radial_power(dim, 0.8, 3.0, 1.0));
  out.push_back(SyntheticField::gaussian_bump(Vec(dim, 0.1), 1.2, 0.7));
  Vec a(dim), b(dim);
  for (int i = 0; i < dim; ++i) {
    a[i] = 0.5 + 0.3 * i;
    b[i] = 0.1 * (i + 1);
  }
  out.push_back(SyntheticField::polynomial(a, b, 0.15));
  return out;
}

}  // namespace

TEST(SyntheticField, FiniteDifferenceConsistency) {
  for (int dim = 2; dim <= 6; ++dim)
    for (const SyntheticField& f : menagerie(dim))
      for (const Vec& x : sample_ball_points(dim * 13, dim, 0.9, 10)) {
        const FdConsistency c = fd_consistency(f, x);
        EXPECT_TRUE(c.passes()) << to_string(f.family()) << " dim " << dim << " grad " << c.gradient_error
                                << " hess " << c.hessian_error;
      }
}

TEST(EulerGap, Examples) {
  const SyntheticField q = SyntheticField::quadratic(SymmetricMatrix::diagonal({1, 2, 3}), Vec(3, 0.0), 0.0);
  EXPECT_NEAR(euler_identity_gap(q, Vec{0.2, 0.1, -0.3}), 0.0, 1e-12);
  for (int n = 2; n <= 6; ++n) {
    const SyntheticField iso = SyntheticField::quadratic(SymmetricMatrix::identity(n), Vec(n, 0.0), 0.0);
    EXPECT_NEAR(euler_identity_gap(iso, Vec(n, 0.3)), 0.0, 1e-12);
  }
}

TEST(EulerGap, AllFamiliesAllDims) {
  for (int dim = 2; dim <= 6; ++dim)
    for (const SyntheticField& f : menagerie(dim))
      for (const Vec& x : sample_ball_points(100 + dim, dim, 1.0, 100)) {
        const Jet j = f.jet(x);
        const double hn = j.hessian.frobenius_norm();
        EXPECT_LE(std::abs(euler_identity_gap(j)), 1e-10 * (1.0 + hn * hn));
      }
}

TEST(LevelSetH2, RadialThreeDims) {
  const SyntheticField u = SyntheticField::radial_power(3, kA, 2.0, 1.0);
  const CurvatureProbe p = levelset_h2_extract(u, Vec{1.0, 0.0, 0.0});
  EXPECT_NEAR(p.lhs_334, 32.0 * std::pow(kA, 4), 1e-14);
  EXPECT_NEAR(p.lhs_334, 2.0 / 9.0, 1e-14);
  EXPECT_NEAR(p.h2_extracted, 1.0 / std::sqrt(3.0), 1e-14);
  for (double r : {0.2, 0.5, 0.9}) {
    const Vec x{0.0, r / std::sqrt(2.0), r / std::sqrt(2.0)};
    const CurvatureProbe q = levelset_h2_extract(u, x);
    EXPECT_NEAR(q.h2_extracted, 2.0 * kA / r, 1e-10 * (2.0 * kA / r));
    // level spheres of radius r: both curvatures 1/r
    EXPECT_NEAR(q.s2_kappa, 1.0 / (r * r), 1e-10 / (r * r));
    EXPECT_NEAR(q.h1_extracted, 2.0 / r, 1e-10 * 2.0 / r);
    EXPECT_NEAR(q.h2_extracted, q.h2_candidate, 1e-10 * q.h2_extracted);
  }
}

TEST(LevelSetH2, FourDimsAgainstShapeOperator) {
  const SyntheticField u = SyntheticField::radial_power(4, 0.7, 2.0, 1.0);
  const Vec x{0.3, -0.2, 0.5, 0.1};
  const Jet j = u.jet(x);
  const CurvatureProbe p = levelset_h2_extract(j, x);
  // shape operator P H P / |grad u| restricted to the tangent space
  const int n = 4;
  Eigen::VectorXd g(n);
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i) {
    g(i) = j.gradient[i];
    for (int k = 0; k < n; ++k) h(i, k) = j.hessian(i, k);
  }
  const double gn = g.norm();
  const Eigen::VectorXd nu = g / gn;
  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - nu * nu.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj * h * proj / gn);
  Eigen::VectorXd ev = es.eigenvalues();
  // drop the zero eigenvalue of the normal direction
  std::vector<double> kappa;
  for (int i = 0; i < n; ++i) kappa.push_back(ev(i));
  std::sort(kappa.begin(), kappa.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  kappa.erase(kappa.begin());
  const double s2k = kappa[0] * kappa[1] + kappa[0] * kappa[2] + kappa[1] * kappa[2];
  EXPECT_NEAR(p.s2_kappa, s2k, 1e-10 * std::abs(s2k));
  EXPECT_NEAR(p.h2_candidate, gn * s2k, 1e-10 * gn * std::abs(s2k));
}

TEST(LevelSetH2, RejectsCriticalPoint) {
  const SyntheticField u = SyntheticField::radial_power(3, kA, 2.0, 1.0);
  EXPECT_THROW(levelset_h2_extract(u, Vec{0.0, 0.0, 0.0}), PreconditionError);
}

TEST(LevelSetH2, PlanarResidualRecorded) {
  // one curvature only: S2(kappa) = 0, so the extracted H2 is a measurement
  const SyntheticField u = SyntheticField::radial_power(2, 0.5, 2.0, 1.0);
  const CurvatureProbe p = levelset_h2_extract(u, Vec{0.4, 0.3});
  EXPECT_DOUBLE_EQ(p.s2_kappa, 0.0);
  EXPECT_TRUE(std::isfinite(p.h2_extracted));
}

TEST(PhilippinSafoui, RadialClosedForm) {
  const double a = 0.6;
  const SyntheticField u = SyntheticField::radial_power(3, a, 2.0, 1.0);
  const double r = 0.7;
  const Vec x{r, 0.0, 0.0};
  EXPECT_NEAR(philippin_safoui_gap(u, x), 16.0 * std::pow(a, 4) * r * r, 1e-12);
  EXPECT_NEAR(philippin_safoui_gap(u, Vec{0.0, 0.0, 0.0}), 0.0, 1e-15);
}

TEST(PhilippinSafoui, ConvexQuadraticsNonNegative) {
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const int dim = 2 + static_cast<int>(k % 5);
    const SymmetricMatrix h = sample_semidefinite(mix_seed(71, k), dim, Sign::positive, 2.0).matrix;
    const SyntheticField f = SyntheticField::quadratic(h, sample_gaussian_vector(mix_seed(72, k), dim), 0.0);
    const Vec x = sample_ball_points(mix_seed(73, k), dim, 1.0, 1).front();
    const Jet j = f.jet(x);
    const double hn = j.hessian.frobenius_norm();
    EXPECT_GE(philippin_safoui_gap(j), -1e-9 * (1.0 + norm_squared(j.gradient) * hn * hn));
  }
}

TEST(Transform, Derivatives) {
  const Transform s = Transform::neg_sqrt();
  EXPECT_DOUBLE_EQ(s.value(-1.0), -1.0);
  EXPECT_DOUBLE_EQ(s.first(-1.0), 0.5);
  EXPECT_DOUBLE_EQ(s.second(-1.0), 0.25);
  const Transform l = Transform::neg_log();
  EXPECT_DOUBLE_EQ(l.value(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(l.first(-1.0), 1.0);
  EXPECT_DOUBLE_EQ(l.second(-1.0), 1.0);
  EXPECT_THROW(s.value(0.0), DomainError);
  EXPECT_THROW(l.first(0.5), DomainError);
  EXPECT_NO_THROW(Transform::identity().value(2.0));
  for (const Transform& t : {s, l, Transform::neg_power(0.25)}) {
    for (double u : {-2.0, -0.7, -0.1}) {
      const double e = 1e-5;
      EXPECT_NEAR(t.first(u), (t.value(u + e) - t.value(u - e)) / (2 * e), 1e-7 * std::max(1.0, std::abs(t.first(u))));
      EXPECT_NEAR(t.second(u), (t.first(u + e) - t.first(u - e)) / (2 * e), 1e-6 * std::max(1.0, std::abs(t.second(u))));
    }
  }
}

TEST(TransformHessian, Examples) {
  Jet j;
  j.value = -1.0;
  j.gradient = {1.0, 0.0};
  j.hessian = SymmetricMatrix::identity(2);
  const SymmetricMatrix id = transform_hessian(j, Transform::identity());
  EXPECT_DOUBLE_EQ(id(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(id(0, 1), 0.0);
  // U'' = +1/4 for -sqrt(-t) at t = -1
  const SymmetricMatrix s = transform_hessian(j, Transform::neg_sqrt());
  EXPECT_DOUBLE_EQ(s(0, 0), 0.75);
  EXPECT_DOUBLE_EQ(s(1, 1), 0.5);
  j.gradient = {0.0, 0.0};
  const SymmetricMatrix l = transform_hessian(j, Transform::neg_log());
  EXPECT_DOUBLE_EQ(l(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(l(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(l(0, 1), 0.0);
}

TEST(TransformHessian, MatchesFiniteDifferences) {
  const SyntheticField u = SyntheticField::gaussian_bump(Vec{0.1, -0.2, 0.0}, 1.5, 0.8);
  const Transform tr = Transform::neg_sqrt();
  const Vec x{0.2, 0.1, -0.3};
  const SymmetricMatrix h = transform_hessian(u, tr, x);
  const double e = 1e-4;
  auto U = [&](Vec y) { return tr.value(u.value(y)); };
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      Vec pp = x, pm = x, mp = x, mm = x;
      pp[i] += e; pp[k] += e;
      pm[i] += e; pm[k] -= e;
      mp[i] -= e; mp[k] += e;
      mm[i] -= e; mm[k] -= e;
      const double fd = (U(pp) - U(pm) - U(mp) + U(mm)) / (4 * e * e);
      EXPECT_NEAR(h(i, k), fd, 1e-5);
    }
}

TEST(ConvexityScan, Examples) {
  const SyntheticField disk = SyntheticField::radial_power(2, 0.5, 2.0, 1.0);
  EXPECT_TRUE(convexity_scan(disk, Transform::identity(), sample_ball_points(1, 2, 0.99, 200)).convex);
  const SyntheticField ball = SyntheticField::radial_power(3, kA, 2.0, 1.0);
  EXPECT_TRUE(convexity_scan(ball, Transform::neg_sqrt(), sample_ball_points(2, 3, 0.99, 200)).convex);
  // x^2/2 - y^4/4 - y^2/2: saddle everywhere
  const SyntheticField saddle = SyntheticField::polynomial(Vec{1.0, -1.0}, Vec{0.0, -1.0}, 0.0);
  const ConvexityReport rep = convexity_scan(saddle, Transform::identity(), sample_ball_points(3, 2, 0.9, 50));
  EXPECT_FALSE(rep.convex);
  EXPECT_LT(rep.min_eigenvalue, -0.5);
}

TEST(ConvexityScan, DomainErrorPropagates) {
  const SyntheticField f = SyntheticField::radial_power(2, 0.5, 2.0, 1.0);
  EXPECT_THROW(convexity_scan(f, Transform::neg_sqrt(), std::vector<Vec>{{2.0, 0.0}}), DomainError);
}

TEST(SampleBallPoints, InsideAndDeterministic) {
  const auto a = sample_ball_points(9, 4, 2.0, 100);
  const auto b = sample_ball_points(9, 4, 2.0, 100);
  ASSERT_EQ(a.size(), 100u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_LE(norm_squared(a[i]), 4.0);
  }
}
