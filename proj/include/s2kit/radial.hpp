#pragma once

// Radially symmetric solutions of S2(D^2u) = f(u) on the ball B_R in R^N. With
// u = u(r) the Hessian has eigenvalues u'' (once) and u'/r (N - 1 times), and
// the equation integrates to
//
//   r^{N-2} u'(r)^2 = (2/(N-1)) int_0^r s^{N-1} f(u(s)) ds,   u(R) = 0.

#include <span>
#include <string>
#include <vector>

#include "s2kit/fields.hpp"
#include "s2kit/source.hpp"
#include "s2kit/symmat.hpp"

namespace s2kit {

struct SolveConfig {
  double h = 1.0 / 64.0;  ///< grid spacing of the 2D solver
  int radial_nodes = 1024;  ///< intervals of the radial grid (even)
  double tolerance = 1e-10;  ///< sup-norm defect (radial) or residual (grid) at convergence
  int max_iterations = 200;
  double damping = 1.0;  ///< initial Newton step fraction, in (0, 1]
  double eigen_tolerance = 1e-12;  ///< stop when successive eigenvalue estimates differ by less

  /// ConfigurationError unless tolerances > 0, damping in (0, 1], nodes even and >= 8.
  void validate() const;
};

struct RadialProfile {
  int dim = 3;
  double radius = 1.0;
  std::string source;  ///< describe() of the source term
  Vec r, u, up;  ///< nodes, u(r_j), u'(r_j)
  int quadrature_order = 4;
  int iterations = 0;
  double final_defect = 0.0;
  std::vector<double> defect_history;

  std::size_t size() const { return r.size(); }
  double spacing() const { return radius / static_cast<double>(r.size() - 1); }
  double u_min() const { return u.front(); }
  double boundary_gradient() const { return up.back(); }

  /// u'' at every node: fourth-order differences of u', odd reflection at r = 0,
  /// one-sided five-point formulas next to r = R.
  Vec second_derivative() const;
  /// Hessian eigenvalues (u'', u'/r) at node j; at r = 0 both equal u''(0).
  std::pair<double, double> hessian_eigenvalues(std::size_t j) const;
  /// Value, gradient and Hessian at r_j times the unit vector `direction`.
  Jet jet(std::size_t j, std::span<const double> direction) const;

  /// Cubic Hermite interpolation of u and u' at rho in [0, R].
  double value_at(double rho) const;
  double slope_at(double rho) const;
};

/// Picard iteration on the integral form with product-Simpson quadrature.
/// SourceError if f(u) <= 0 at a node; SolverError without convergence.
RadialProfile solve_radial(int dim, double radius, const SourceTerm& f, const SolveConfig& cfg);

/// One sweep of the integral map: the profile whose S2 equals the given nodal
/// data rhs_j (nonnegative) and which vanishes at r = R.
RadialProfile integrate_radial(int dim, double radius, std::span<const double> rhs);

/// Sup-norm over nodes of the pointwise residual
///   (N-1) u'' u'/r + C(N-1,2) (u'/r)^2 - rhs(u)
/// with u'' from second_derivative() and the r -> 0 limit C(N,2) u''(0)^2.
double radial_equation_residual(const RadialProfile& prof, const SourceTerm& f);

struct EigenResult {
  double lambda = 0.0;
  RadialProfile profile;  ///< normalised with min u = -1
  int iterations = 0;
  std::vector<double> lambda_history;
  double residual = 0.0;  ///< sup |S2(D^2u) - lambda u^2|
};

enum class EigenStart { parabola, cosine };

/// Inverse iteration for S2(D^2u) = lambda (-u)^2 on B_R: from u_k with
/// ||u_k||_inf = 1 solve S2(D^2v) = u_k^2, set lambda = 1/||v||^2 and
/// u_{k+1} = v / ||v||. SolverError on stagnation or divergence.
EigenResult solve_eigen_radial(int dim, double radius, const SolveConfig& cfg,
                               EigenStart start = EigenStart::parabola);

}  // namespace s2kit
