#pragma once

// P-functions Phi = |grad u|^2 + 2 alpha int_u^0 f^gamma(s) ds on solved
// problems, discrete min/max principle verdicts, a priori bound reports and
// the quantities at the critical point of u.

#include <optional>
#include <string>
#include <vector>

#include "s2kit/fields.hpp"
#include "s2kit/grid2d.hpp"
#include "s2kit/radial.hpp"
#include "s2kit/source.hpp"

namespace s2kit {

/// A solution reduced to what the post-processing needs: interior nodes with
/// u and |grad u|, boundary samples with |grad u| = |du/dn|, and jets.
struct SampledSolution {
  struct Node {
    Vec x;
    double u = 0.0;
    double grad_norm = 0.0;
    double distance = 0.0;  ///< to the boundary
  };
  int dim = 2;
  double spacing = 0.0;  ///< h of the grid or of the radial nodes
  std::string domain;
  std::string source;
  std::vector<Node> interior;
  std::vector<Node> boundary;
  std::vector<Jet> jets;  ///< aligned with interior
  std::vector<std::size_t> local_minima;  ///< interior indices of discrete local minima of u

  std::size_t argmin() const;
};

/// Radial: nodes r_j < R along e_1 and the single boundary sample r = R.
SampledSolution sample_solution(const RadialProfile& prof);
/// Grid: every inside node and every usable axis crossing of the boundary.
SampledSolution sample_solution(const ScalarField2D& sol);

struct PFunctionSpec {
  double alpha = 1.0;
  double gamma = 0.5;  ///< 1/2 or 1

  /// InputError unless gamma is 1/2 or 1 and alpha is finite.
  void validate() const;
};

/// int_u^0 f(s)^gamma ds by adaptive Simpson (relative tolerance 1e-10).
double pfunction_integral(const SourceTerm& f, double u, double gamma);

struct PhiField {
  struct Sample {
    Vec x;
    double u = 0.0;
    double grad_sq = 0.0;
    double integral = 0.0;  ///< int_u^0 f^gamma
    double value = 0.0;
    bool boundary = false;
    double distance = 0.0;
  };
  PFunctionSpec spec;
  double spacing = 0.0;
  std::vector<Sample> samples;

  /// Same gradient and integral data, different alpha.
  PhiField with_alpha(double alpha) const;
  double max_abs() const;
};

PhiField pfunction_field(const SampledSolution& sol, const SourceTerm& f, const PFunctionSpec& spec);

enum class Extremum { min, max };
std::string to_string(Extremum mode);

struct PrincipleVerdict {
  struct Extreme {
    double value = 0.0;
    Vec location;
    double distance = 0.0;
  };
  Extremum mode = Extremum::min;
  Extreme interior;
  Extreme boundary;
  /// min mode: interior min - boundary min; max mode: boundary max - interior max
  double margin = 0.0;
  double tol_margin = 0.0;
  /// Phi at the minimum of u against the boundary extreme, same sign convention
  double critical_excess = 0.0;
  bool holds = false;
  double distance_of_argextreme_to_boundary = 0.0;
};

/// 5 h^2 max(1, max |Phi|)
double default_tol_margin(const PhiField& phi);

PrincipleVerdict verify_principle(const PhiField& phi, Extremum mode, double tol_margin);

/// U for the a priori bounds: 1 -> -sqrt(-t), 2 -> -log(-t), 3 -> -(-t)^{(2-p)/4}.
/// HypothesisError when p is outside (0, 2) for application 3 (for p > 2 the
/// transform is decreasing), InputError for an unknown application.
Transform transform_preset(int application, double p = 1.0);

/// First of identity, -sqrt(-t), -log(-t) that makes U(u) convex at every jet.
std::optional<Transform> find_convexifying_transform(const SampledSolution& sol);

struct BoundsReport {
  int application = 1;
  std::string transform;
  ConvexityReport convexity;
  bool hypothesis_met = false;
  std::string reason;  ///< why the hypothesis failed, empty otherwise
  double u_min = 0.0;
  double lhs = 0.0;  ///< 2 int_{u_min}^0 f (gamma = 1, the printed formula)
  double lhs_gamma_half = 0.0;  ///< 2 int_{u_min}^0 f^{1/2}
  double lhs_closed_form = 0.0;  ///< printed closed form with the source coefficients
  double rhs = 0.0;  ///< |grad u|^2_min over the boundary
  double slack = 0.0;
  double slack_gamma_half = 0.0;
  double pointwise_min_slack = 0.0;  ///< gamma = 1 pointwise inequality over interior nodes
  double pointwise_min_slack_gamma_half = 0.0;
  double scale = 1.0;  ///< max(1, lhs, rhs)
  bool holds = false;  ///< hypothesis met and slack >= -1e-6 scale
};

/// The source preset must match the application (constant, eigen, power);
/// InputError otherwise. A failed convexity or f' <= 0 hypothesis is
/// reported with holds = false rather than thrown.
BoundsReport bounds_report(const SampledSolution& sol, const SourceTerm& f, int application);

struct CriticalPointReport {
  Vec location;
  Vec spectrum;  ///< Hessian eigenvalues at the discrete minimum, ascending
  double u_value = 0.0;
  double f_value = 0.0;
  double max_ratio = 0.0;  ///< max_i u_ii / f^{1/2}
  double binom_bound = 0.0;  ///< C(N,2)^{-1/2}
  double alpha = 0.0;
  bool alpha_dominates = false;  ///< max_ratio <= alpha
  double s2_value = 0.0;  ///< S2 of the discrete Hessian
  double s2_relative_error = 0.0;  ///< |S2 - f| / f
  bool positive_definite = false;
  bool unique_minimum = false;
};

/// SolverError when the minimum of u is not attained at an interior node.
CriticalPointReport critical_point_report(const SampledSolution& sol, const SourceTerm& f, double alpha);

/// One CSV row per verified case.
struct CaseRow {
  std::string case_id;
  std::string domain;
  std::string source;
  double alpha = 0.0;
  double gamma = 0.0;
  std::string mode;
  double margin = 0.0;
  double tol_margin = 0.0;
  double slack = 0.0;
  bool holds = false;
  std::string note;
};

std::string csv_header();
std::string to_csv(const CaseRow& row);

}  // namespace s2kit
