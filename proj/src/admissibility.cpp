#include "s2kit/admissibility.hpp"

#include <algorithm>
#include <limits>

namespace s2kit {

AdmissibilityReport admissibility_report(std::span<const Jet> jets) {
  AdmissibilityReport rep;
  rep.nodes = jets.size();
  if (jets.empty()) {
    rep.reason = "no nodes";
    return rep;
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  rep.min_s1 = rep.min_s2 = rep.min_cofactor_eigenvalue = inf;
  rep.max_u = -inf;
  for (const Jet& j : jets) {
    const Vec s = elem_sym_all(j.hessian);
    rep.min_s1 = std::min(rep.min_s1, s[1]);
    rep.min_s2 = std::min(rep.min_s2, s[2]);
    rep.min_cofactor_eigenvalue = std::min(rep.min_cofactor_eigenvalue, spectrum(cofactor_s2(j.hessian)).min());
    rep.max_u = std::max(rep.max_u, j.value);
  }
  if (!(rep.min_s1 > 0.0)) rep.reason = "S1 (Laplacian) not positive";
  else if (!(rep.min_s2 > 0.0)) rep.reason = "S2 not positive";
  else if (!(rep.min_cofactor_eigenvalue > 0.0)) rep.reason = "cofactor matrix not positive definite";
  else if (!(rep.max_u < 0.0)) rep.reason = "u is not negative at every inside node";
  rep.admissible = rep.reason.empty();
  return rep;
}

std::vector<Jet> solution_jets(const RadialProfile& prof) {
  Vec e(prof.dim, 0.0);
  e[0] = 1.0;
  std::vector<Jet> jets;
  jets.reserve(prof.size());
  const Vec upp = prof.second_derivative();
  for (std::size_t j = 0; j + 1 < prof.size(); ++j) {
    const double q = j == 0 ? upp[0] : prof.up[j] / prof.r[j];
    Jet jt;
    jt.value = prof.u[j];
    jt.gradient = e;
    jt.gradient[0] = prof.up[j];
    jt.hessian = q * SymmetricMatrix::identity(prof.dim) + (upp[j] - q) * SymmetricMatrix::outer(e);
    jets.push_back(std::move(jt));
  }
  return jets;
}

std::vector<Jet> solution_jets(const ScalarField2D& sol) {
  std::vector<Jet> jets;
  jets.reserve(sol.u.size());
  for (std::size_t k = 0; k < sol.u.size(); ++k) jets.push_back(sol.jet(k));
  return jets;
}

AdmissibilityReport admissibility_report(const RadialProfile& prof) { return admissibility_report(solution_jets(prof)); }

AdmissibilityReport admissibility_report(const ScalarField2D& sol) { return admissibility_report(solution_jets(sol)); }

}  // namespace s2kit
