#pragma once

// Evaluation of the sharp cubic matrix inequality
//
//   (1/3)|v|^2 {2 tr(BA) - tr(B) tr(A)}  <=  2(Av, Bv) - (Av, v) tr(B),   B = tr(A)A - A^2,
//
// for semidefinite A, its eigenbasis residual 2 sum_k w_k^2 S_3^{(k)}(A), and the
// transported form M(x) built from the Hessian of a composed function U(u).

#include <array>
#include <span>

#include "s2kit/symmat.hpp"

namespace s2kit {

enum class MatrixSign { positive, negative, indefinite };

struct InequalityRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual_direct = 0.0;  ///< rhs - lhs
  double residual_closed = 0.0;  ///< 2 sum_k w_k^2 S_3^{(k)}(A)
  MatrixSign matrix_sign = MatrixSign::indefinite;
  double scale = 1.0;  ///< 1 + ||A||_F^3 |v|^2, the natural magnitude of both sides

  /// |residual_direct - residual_closed| <= tol * scale
  bool closed_form_agrees(double tol = 1e-9) const;
};

/// Classify by spectrum with tolerance 1e-12 * ||A||_F; the zero matrix is positive.
MatrixSign classify_sign(const Spectrum& spec, double norm);

InequalityRecord lemma1_evaluate(const SymmetricMatrix& a, std::span<const double> v);

/// lemma1_evaluate restricted to negative semidefinite A (throws
/// PreconditionError otherwise); the residual is expected to be <= 0.
InequalityRecord remark_sign_check(const SymmetricMatrix& a, std::span<const double> v);

struct ContractionScalars {
  double r = 0.0;  ///< |v|^2
  double s = 0.0;  ///< tr A
  double q = 0.0;  ///< <Av, v>
  double t = 0.0;  ///< |Av|^2

  /// Gaps (computed - expected) of the six contraction identities, with B = v v^T:
  ///  [0] S2^ij(A) (AB+BA)_ji        = 2sq - 2t
  ///  [1] (r delta - v v^T) : A^2     = r tr(A^2) - t
  ///  [2] S2^ij(A) (Av)_j v_i         = sq - t
  ///  [3] (r delta - v v^T) : (Av)(Av)^T = rt - q^2
  ///  [4] (r delta - v v^T) : (AB+BA) = 0
  ///  [5] (r delta - v v^T) : B^2     = 0
  std::array<double, 6> gaps{};
  /// Magnitude of the terms entering each identity, for relative tolerances.
  std::array<double, 6> scales{};

  bool identities_hold(double rel_tol = 1e-10) const;
};

ContractionScalars contraction_scalars(const SymmetricMatrix& a, std::span<const double> v);

/// Value, first and second derivative of a scalar transform U at u.
struct TransformEval {
  double u_value = 0.0;
  double U_prime = 1.0;
  double U_second = 0.0;
  enum class Monotone { increasing, decreasing } monotone = Monotone::increasing;

  static TransformEval from_derivatives(double u, double U_prime, double U_second);
};

/// (1/3) r [2 S2^ij(X) X_jl X_li - 2 S2(X) tr X] - 2 S2^ij(X) (Xv)_j (Xv)_i + 2 S2(X) <Xv, v>
/// with r = |v|^2. Applied to X = D^2(U(u)) this is M(x); applied to X = D^2 u
/// it is the bracket multiplying U'^3.
double transported_form(const SymmetricMatrix& x, std::span<const double> v);

struct Lemma2Result {
  double m_direct = 0.0;
  double m_factored = 0.0;
  double scale = 1.0;  ///< magnitude of the terms in both routes

  bool agrees(double rel_tol = 1e-8) const;
};

/// hessU = U' A_u + U'' grad u (x) grad u. A_u is recovered from hessU; throws
/// SingularTransformError when |U'| < 1e-10.
Lemma2Result lemma2_evaluate(const SymmetricMatrix& hess_U, std::span<const double> grad_u,
                             const TransformEval& tr);

struct ExpansionCoeffs {
  double m30 = 0.0;  ///< alpha^3
  double m21 = 0.0;  ///< alpha^2 beta
  double m12 = 0.0;  ///< alpha beta^2
  double m03 = 0.0;  ///< beta^3
  double m30_direct = 0.0;  ///< independent evaluation through the contraction scalars

  /// m21, m12, m03 each <= tol * max(1, |m30|) and m30 == m30_direct within tol.
  bool vanishing_holds(double tol = 1e-8) const;
};

/// Probes M(alpha, beta) = transported_form(alpha A_u + beta v v^T, v) at
/// (1,0), (0,1), (1,1), (2,1) and solves for the cubic monomial coefficients.
ExpansionCoeffs expansion_coefficients(const SymmetricMatrix& a_u, std::span<const double> grad_u);

/// Coefficient of alpha^3 written out in the scalars r, s, q, t and traces of A.
double alpha_cubed_coefficient(const SymmetricMatrix& a, std::span<const double> v);

}  // namespace s2kit
