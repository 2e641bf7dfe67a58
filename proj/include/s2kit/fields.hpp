#pragma once

// Closed-form scalar fields with analytic gradient and Hessian, pointwise
// identities of the 2-Hessian operator along level sets, and composed
// transforms U(u) with their Hessians.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "s2kit/matineq.hpp"
#include "s2kit/symmat.hpp"

namespace s2kit {

/// Value, gradient and Hessian of a field at one point.
struct Jet {
  double value = 0.0;
  Vec gradient;
  SymmetricMatrix hessian;
};

class SyntheticField {
 public:
  enum class Family { quadratic, radial_power, gaussian_bump, polynomial };

  /// (1/2) x^T H x + g.x + c
  static SyntheticField quadratic(SymmetricMatrix h, Vec g, double c);
  /// a (|x|^p - R^p), p >= 2
  static SyntheticField radial_power(int dim, double a, double p, double radius);
  /// -amplitude * exp(-|x - center|^2 / (2 width^2))
  static SyntheticField gaussian_bump(Vec center, double amplitude, double width);
  /// sum_i a_i x_i^2 / 2 + b_i x_i^4 / 4 + c x_0 x_1
  static SyntheticField polynomial(Vec a, Vec b, double c);

  int dim() const { return dim_; }
  Family family() const;

  double value(std::span<const double> x) const;
  Vec gradient(std::span<const double> x) const;
  SymmetricMatrix hessian(std::span<const double> x) const;
  Jet jet(std::span<const double> x) const;

 private:
  struct Quadratic {
    SymmetricMatrix h;
    Vec g;
    double c;
  };
  struct RadialPower {
    double a, p, radius;
  };
  struct Bump {
    Vec center;
    double amplitude, width;
  };
  struct Polynomial {
    Vec a, b;
    double c;
  };

  SyntheticField(int dim, std::variant<Quadratic, RadialPower, Bump, Polynomial> data)
      : dim_(dim), data_(std::move(data)) {}
  void check_point(std::span<const double> x) const;

  int dim_;
  std::variant<Quadratic, RadialPower, Bump, Polynomial> data_;
};

std::string to_string(SyntheticField::Family family);

/// Largest relative deviation of the analytic gradient and Hessian from
/// central differences of u with step h (normalised by max(1, |exact|)).
struct FdConsistency {
  double gradient_error = 0.0;
  double hessian_error = 0.0;
  bool passes(double tol = 1e-6) const { return gradient_error <= tol && hessian_error <= tol; }
};

FdConsistency fd_consistency(const SyntheticField& fld, std::span<const double> x, double h = 1e-4);

/// S2^kl(D^2u) u_kl - 2 S2(D^2u)
double euler_identity_gap(const Jet& jet);
double euler_identity_gap(const SyntheticField& fld, std::span<const double> x);

struct CurvatureProbe {
  Vec point;
  double grad_norm = 0.0;
  double s2_value = 0.0;  ///< S2(D^2u)
  double lhs_334 = 0.0;  ///< S2^ij u_i u_l u_lj
  double h2_extracted = 0.0;  ///< (S2 |grad u|^2 - lhs_334) / |grad u|^3
  double s2_kappa = 0.0;  ///< S2 of the level-set principal curvatures
  double h2_candidate = 0.0;  ///< |grad u| * s2_kappa
  double h1_extracted = 0.0;  ///< S2^ij u_i u_j / |grad u|^3
  double h1_geometric = 0.0;  ///< sum of principal curvatures
  Vec curvatures;  ///< principal curvatures, ascending
};

/// Probe rejected (PreconditionError) when |grad u| < 1e-8.
CurvatureProbe levelset_h2_extract(const Jet& jet, std::span<const double> x);
CurvatureProbe levelset_h2_extract(const SyntheticField& fld, std::span<const double> x);

/// |grad u|^2 S2(D^2u) - (u_il u_i u_l Delta u - u_ik u_k u_il u_l)
double philippin_safoui_gap(const Jet& jet);
double philippin_safoui_gap(const SyntheticField& fld, std::span<const double> x);

/// Scalar transform U applied to a solution value. All kinds other than the
/// identity are defined for t < 0 only.
class Transform {
 public:
  enum class Kind { identity, neg_sqrt, neg_log, neg_power };

  static Transform identity() { return Transform(Kind::identity, 1.0); }
  /// -sqrt(-t)
  static Transform neg_sqrt() { return Transform(Kind::neg_sqrt, 0.5); }
  /// -log(-t)
  static Transform neg_log() { return Transform(Kind::neg_log, 0.0); }
  /// -(-t)^e, e != 0
  static Transform neg_power(double e);

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  std::string name() const;

  double value(double t) const;
  double first(double t) const;
  double second(double t) const;
  TransformEval eval(double t) const;

 private:
  Transform(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}
  void check_domain(double t) const;

  Kind kind_;
  double exponent_;
};

/// U'(u) D^2u + U''(u) grad u (x) grad u
SymmetricMatrix transform_hessian(const Jet& jet, const Transform& tr);
SymmetricMatrix transform_hessian(const SyntheticField& fld, const Transform& tr, std::span<const double> x);

struct ConvexityReport {
  std::size_t points = 0;
  double min_eigenvalue = 0.0;
  double min_scaled_eigenvalue = 0.0;  ///< min of lambda_min / (1 + ||hess||_F)
  std::size_t worst_index = 0;
  bool convex = true;
};

/// Convex iff lambda_min(transform_hessian) >= -1e-8 (1 + ||hess||_F) at every point.
ConvexityReport convexity_scan(std::span<const Jet> jets, const Transform& tr);
ConvexityReport convexity_scan(const SyntheticField& fld, const Transform& tr, std::span<const Vec> points);

/// count points uniform in the ball of the given radius about the origin.
std::vector<Vec> sample_ball_points(std::uint64_t seed, int dim, double radius, std::size_t count);

}  // namespace s2kit
