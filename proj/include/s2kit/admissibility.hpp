#pragma once

#include <span>
#include <string>

#include "s2kit/fields.hpp"
#include "s2kit/grid2d.hpp"
#include "s2kit/radial.hpp"

namespace s2kit {

/// Minimum over nodes of S1(D^2u), S2(D^2u) and the smallest eigenvalue of the
/// cofactor matrix S2^ij; admissible iff all three are strictly positive and
/// u < 0 at every inside node.
struct AdmissibilityReport {
  std::size_t nodes = 0;
  double min_s1 = 0.0;
  double min_s2 = 0.0;
  double min_cofactor_eigenvalue = 0.0;
  double max_u = 0.0;  ///< largest value at inside nodes
  bool admissible = false;
  std::string reason;
};

AdmissibilityReport admissibility_report(std::span<const Jet> jets);
/// Nodes r_j < R along the first axis.
AdmissibilityReport admissibility_report(const RadialProfile& prof);
AdmissibilityReport admissibility_report(const ScalarField2D& sol);

/// Jets at the radial nodes r_j < R (direction e_1) or at every inside grid node.
std::vector<Jet> solution_jets(const RadialProfile& prof);
std::vector<Jet> solution_jets(const ScalarField2D& sol);

}  // namespace s2kit
