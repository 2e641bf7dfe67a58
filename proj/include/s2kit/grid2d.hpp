#pragma once

// Newton finite-difference solver for det D^2u = f(u) on a convex planar
// domain with u = 0 on the boundary. Second derivatives use Shortley-Weller
// three-point formulas along the two axes and the two diagonals; the mixed
// derivative is (u_xi,xi - u_eta,eta) / 2 along the diagonals.

#include <memory>
#include <string>
#include <vector>

#include "s2kit/domain.hpp"
#include "s2kit/fields.hpp"
#include "s2kit/radial.hpp"
#include "s2kit/source.hpp"

namespace s2kit {

struct NodeDerivatives {
  double ux = 0, uy = 0, uxx = 0, uyy = 0, uxy = 0;
};

struct BoundaryGradient {
  Point2 point{};
  Point2 normal{};
  double grad_norm = 0.0;
  int node = 0;
};

struct ScalarField2D {
  std::shared_ptr<const GridMask> mask;
  std::string source;
  Vec u;  ///< one value per inside node of the mask
  int newton_steps = 0;
  int step_halvings = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history;

  double neighbour_value(std::size_t k, int dir) const;
  NodeDerivatives derivatives(std::size_t k) const;
  Jet jet(std::size_t k) const;
  std::size_t argmin() const;
  double u_min() const { return u[argmin()]; }
  /// |grad u| at boundary crossings whose normal makes |n.e| >= 0.5 with the arm,
  /// from the quadratic through the boundary point and the two nodes behind it.
  std::vector<BoundaryGradient> boundary_gradients() const;
};

/// Discrete det D^2u - f(u) at every inside node.
Vec grid_residual(const ScalarField2D& sol, const SourceTerm& f);

/// Throws SourceError when f(0) <= 0, SolverError when damping cannot keep
/// the iterate admissible or the residual does not reach cfg.tolerance.
ScalarField2D solve_grid2d(const DomainSpec& spec, const SourceTerm& f, const SolveConfig& cfg);

/// Interpolates the exact solution on the mask nodes: for the disk of radius R
/// u(x) = w(|x|) and for the ellipse (a,b) u(x) = w(sqrt(x^2/a^2 + y^2/b^2)) where
/// w solves the radial N=2 problem (on the unit disk with f scaled by a^2 b^2).
ScalarField2D radial_reference(const DomainSpec& spec, double h, const SourceTerm& f, const SolveConfig& cfg);

}  // namespace s2kit
