#pragma once

// Batches of solved cases and the principle/identity checks run over them.
// Shared by the command-line tool and the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

#include "s2kit/analysis.hpp"
#include "s2kit/radial.hpp"
#include "s2kit/source.hpp"

namespace s2kit {

struct CaseSpec {
  std::string id;
  std::string kind;  ///< radial | grid2d
  int dim = 2;
  std::string domain;  ///< "ball" radius as text for radial, domain spec for grid2d
  std::string source;
};

struct SolvedCase {
  CaseSpec spec;
  SourceTerm f;
  SampledSolution sol;
};

/// Solves every case (concurrently); results in input order.
std::vector<SolvedCase> solve_cases(const std::vector<CaseSpec>& specs, const SolveConfig& cfg);

/// Rows of verify_principle over alphas x gammas with the default tolerance.
std::vector<CaseRow> principle_rows(const SolvedCase& c, const std::vector<double>& alphas,
                                    const std::vector<double>& gammas, Extremum mode, const std::string& note = "");

/// Minimum principle for f' <= 0, alpha in {1, 1.5, 2}, after a convexifying
/// transform has been found; rows for gamma 1/2 and 1.
std::vector<CaseRow> min_principle_rows(const std::vector<SolvedCase>& cases);
/// Maximum principle for f' >= 0 with alpha = C(N,2)^{-1/2}.
std::vector<CaseRow> max_principle_rows(const std::vector<SolvedCase>& cases);
/// N = 2: (i) f' >= 0, alpha in {-2,-1,0,0.5,1}, max; (ii) f' <= 0, alpha in {-1,-0.5,1,2}, min.
std::vector<CaseRow> planar_principle_rows(const std::vector<SolvedCase>& cases);

struct IdentityScanReport {
  std::uint64_t seed = 0;
  std::size_t fields = 0;
  double max_scaled_euler_gap = 0.0;  ///< |gap| / (1 + ||D^2u||^2)
  std::size_t convex_points = 0;
  double min_scaled_ps_gap = 0.0;  ///< gap / (1 + |grad u|^2 ||D^2u||^2) over convex points
  std::size_t h2_probes = 0;
  double h2_fit_exponent = 0.0;  ///< k in H2 = c |grad u|^k S2(kappa)
  double h2_fit_coefficient = 0.0;  ///< c
  double h2_fit_residual = 0.0;  ///< max relative misfit of the fitted law
  double h2_unit_factor_residual = 0.0;  ///< same with k = 1, c = 1
  double max_h1_gap = 0.0;  ///< |H1 extracted - sum of curvatures| over the radial probes

  bool passed() const;
};

/// Euler and Philippin-Safoui gaps over seeded synthetic fields in dims 2..5,
/// H2 convention fit on radial N = 3 probes.
IdentityScanReport run_identity_scan(std::uint64_t seed, std::size_t count);

}  // namespace s2kit
