#include <gtest/gtest.h>

#include <cmath>

#include "s2kit/error.hpp"
#include "s2kit/matineq.hpp"

using namespace s2kit;

namespace {

Vec e1(int n) {
  Vec v(n, 0.0);
  v[0] = 1.0;
  return v;
}

// rhs - lhs written out by hand, independent of the library's route
double brute_residual(const SymmetricMatrix& a, const Vec& v) {
  const int n = a.dim();
  SymmetricMatrix b(n);
  const SymmetricMatrix a2 = a.squared();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) b.set(i, j, a.trace() * a(i, j) - a2(i, j));
  const Vec av = a.apply(v), bv = b.apply(v);
  const double r = norm_squared(v);
  const double lhs = r / 3.0 * (2.0 * contract(b, a) - b.trace() * a.trace());
  const double rhs = 2.0 * dot(av, bv) - dot(av, v) * b.trace();
  return rhs - lhs;
}

}  // namespace

TEST(CubicInequality, IdentityE1) {
  const InequalityRecord r = lemma1_evaluate(SymmetricMatrix::identity(4), e1(4));
  EXPECT_NEAR(r.lhs, -8.0, 1e-12);
  EXPECT_NEAR(r.rhs, -6.0, 1e-12);
  EXPECT_NEAR(r.residual_direct, 2.0, 1e-12);
  EXPECT_NEAR(r.residual_closed, 2.0, 1e-12);
  EXPECT_EQ(r.matrix_sign, MatrixSign::positive);
}

TEST(CubicInequality, DiagonalAllOnes) {
  const InequalityRecord r = lemma1_evaluate(SymmetricMatrix::diagonal({1, 2, 3, 4}), Vec{1, 1, 1, 1});
  EXPECT_NEAR(r.lhs, -400.0, 1e-10);
  EXPECT_NEAR(r.rhs, -300.0, 1e-10);
  EXPECT_NEAR(r.residual_direct, 100.0, 1e-10);
  EXPECT_NEAR(r.residual_closed, 2.0 * (24 + 12 + 8 + 6), 1e-10);
}

TEST(CubicInequality, DimensionMismatch) {
  EXPECT_THROW(lemma1_evaluate(SymmetricMatrix::identity(3), Vec{1, 2}), InputError);
}

TEST(CubicInequality, ThreeByThreeIsIdentity) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    const SymmetricMatrix a = sample_symmetric(mix_seed(3, k), 3, 2.0);
    const Vec v = sample_gaussian_vector(mix_seed(4, k), 3);
    const InequalityRecord r = lemma1_evaluate(a, v);
    EXPECT_LE(std::abs(r.residual_direct), 1e-10 * r.scale);
  }
}

TEST(CubicInequality, MatchesBruteForceAndClosedForm) {
  for (int dim = 2; dim <= 8; ++dim) {
    for (std::uint64_t k = 0; k < 50; ++k) {
      const SymmetricMatrix a = sample_semidefinite(mix_seed(8, k), dim, Sign::positive, 2.0).matrix;
      const Vec v = sample_gaussian_vector(mix_seed(9, k), dim);
      const InequalityRecord r = lemma1_evaluate(a, v);
      EXPECT_NEAR(r.residual_direct, brute_residual(a, v), 1e-11 * r.scale);
      EXPECT_TRUE(r.closed_form_agrees());
      EXPECT_GE(r.residual_direct, -1e-9 * r.scale);
    }
  }
}

TEST(ReversedInequality, NegativeIdentity) {
  const InequalityRecord r = remark_sign_check(-1.0 * SymmetricMatrix::identity(4), e1(4));
  EXPECT_NEAR(r.residual_direct, -2.0, 1e-12);
}

TEST(ReversedInequality, ZeroMatrix) {
  const InequalityRecord r = remark_sign_check(SymmetricMatrix(3), Vec{1, 2, 3});
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
}

TEST(ReversedInequality, SampledNegative) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    const SymmetricMatrix a = sample_semidefinite(mix_seed(11, k), 5, Sign::negative, 1.0).matrix;
    const InequalityRecord r = remark_sign_check(a, sample_gaussian_vector(mix_seed(12, k), 5));
    EXPECT_LE(r.residual_direct, 1e-9 * r.scale);
  }
}

TEST(ReversedInequality, RejectsNonNegative) {
  EXPECT_THROW(remark_sign_check(SymmetricMatrix::identity(3), e1(3)), PreconditionError);
}

TEST(Contraction, Examples) {
  const ContractionScalars c = contraction_scalars(SymmetricMatrix::diagonal({1, 2, 3, 4}), Vec{1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(c.r, 4.0);
  EXPECT_DOUBLE_EQ(c.s, 10.0);
  EXPECT_DOUBLE_EQ(c.q, 10.0);
  EXPECT_DOUBLE_EQ(c.t, 30.0);
  EXPECT_TRUE(c.identities_hold());

  const Vec v{0.3, -1.2, 2.0};
  const ContractionScalars id = contraction_scalars(SymmetricMatrix::identity(3), v);
  EXPECT_NEAR(id.q, id.r, 1e-15);
  EXPECT_NEAR(id.t, id.r, 1e-15);

  const ContractionScalars z = contraction_scalars(SymmetricMatrix::diagonal({1, 2}), Vec{0, 0});
  EXPECT_EQ(z.r, 0.0);
  EXPECT_EQ(z.q, 0.0);
  EXPECT_EQ(z.t, 0.0);
  for (double g : z.gaps) EXPECT_EQ(g, 0.0);
}

TEST(Contraction, IdentitiesSampled) {
  for (int dim = 2; dim <= 8; ++dim)
    for (std::uint64_t k = 0; k < 30; ++k)
      EXPECT_TRUE(contraction_scalars(sample_symmetric(mix_seed(13, k), dim, 1.0),
                                      sample_gaussian_vector(mix_seed(14, k), dim))
                      .identities_hold());
}

TEST(TransportedForm, IdentityTransformThreeDims) {
  const Vec x{0.4, -0.7, 1.1};
  const Lemma2Result r = lemma2_evaluate(SymmetricMatrix::identity(3), x, TransformEval::from_derivatives(-1.0, 1.0, 0.0));
  EXPECT_NEAR(r.m_direct, 0.0, 1e-12);
  EXPECT_NEAR(r.m_factored, 0.0, 1e-12);
}

TEST(TransportedForm, NegSqrtComposedWithIdentityE1) {
  // hessU = U' A_u + U'' e1 e1^T with A_u = I_4, U' = 1/2, U'' = -1/4
  const Vec g = e1(4);
  const SymmetricMatrix hess = 0.5 * SymmetricMatrix::identity(4) + (-0.25) * SymmetricMatrix::outer(g);
  const Lemma2Result r = lemma2_evaluate(hess, g, TransformEval::from_derivatives(-1.0, 0.5, -0.25));
  EXPECT_NEAR(r.m_factored, -0.25, 1e-12);
  EXPECT_NEAR(r.m_direct, -0.25, 1e-12);
  EXPECT_NEAR(transported_form(SymmetricMatrix::identity(4), g), -2.0, 1e-12);
}

TEST(TransportedForm, ThreeDimsVanishes) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    const SymmetricMatrix h = sample_symmetric(mix_seed(41, k), 3, 1.0);
    const Vec g = sample_gaussian_vector(mix_seed(42, k), 3);
    const Lemma2Result r = lemma2_evaluate(h, g, TransformEval::from_derivatives(-1.0, 0.7, -0.3));
    EXPECT_LE(std::abs(r.m_direct), 1e-10 * r.scale);
    EXPECT_TRUE(r.agrees());
  }
}

TEST(TransportedForm, SingularTransform) {
  EXPECT_THROW(lemma2_evaluate(SymmetricMatrix::identity(3), e1(3), TransformEval::from_derivatives(-1.0, 1e-12, 0.0)),
               SingularTransformError);
}

TEST(TransportedForm, SignFlipsWithDecreasingTransform) {
  const SymmetricMatrix a = SymmetricMatrix::identity(4);
  const Vec g = e1(4);
  const double bracket = transported_form(a, g);
  for (double up : {0.5, -0.5}) {
    const SymmetricMatrix hess = up * a;
    const Lemma2Result r = lemma2_evaluate(hess, g, TransformEval::from_derivatives(-1.0, up, 0.0));
    EXPECT_NEAR(r.m_factored, up * up * up * bracket, 1e-12);
    EXPECT_TRUE(r.agrees());
  }
}

TEST(Expansion, Examples) {
  const ExpansionCoeffs c = expansion_coefficients(SymmetricMatrix::identity(4), e1(4));
  EXPECT_NEAR(c.m30, -2.0, 1e-10);
  EXPECT_NEAR(c.m21, 0.0, 1e-10);
  EXPECT_NEAR(c.m12, 0.0, 1e-10);
  EXPECT_NEAR(c.m03, 0.0, 1e-10);
  EXPECT_TRUE(c.vanishing_holds());

  const ExpansionCoeffs z = expansion_coefficients(SymmetricMatrix::diagonal({1, 2, 3}), Vec{0, 0, 0});
  EXPECT_EQ(z.m30, 0.0);
  EXPECT_EQ(z.m03, 0.0);

  for (std::uint64_t k = 0; k < 20; ++k) {
    const ExpansionCoeffs t = expansion_coefficients(sample_symmetric(mix_seed(50, k), 3, 1.0),
                                                     sample_gaussian_vector(mix_seed(51, k), 3));
    EXPECT_NEAR(t.m30, 0.0, 1e-8);
    EXPECT_TRUE(t.vanishing_holds());
  }
}

TEST(Expansion, AlphaCubedMatchesResidual) {
  for (int dim = 2; dim <= 8; ++dim) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      const SymmetricMatrix a = sample_symmetric(mix_seed(60, k), dim, 1.0);
      const Vec v = sample_gaussian_vector(mix_seed(61, k), dim);
      const InequalityRecord r = lemma1_evaluate(a, v);
      EXPECT_NEAR(alpha_cubed_coefficient(a, v), -r.residual_direct, 1e-9 * r.scale);
    }
  }
}
