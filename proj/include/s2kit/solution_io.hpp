#pragma once

// Versioned columnar text files for solved problems. Numbers are written with
// 17 significant digits so a write/read cycle reproduces every double exactly.

#include <iosfwd>
#include <string>
#include <variant>

#include "s2kit/grid2d.hpp"
#include "s2kit/radial.hpp"

namespace s2kit {

inline constexpr const char* kSolutionFormat = "s2kit-solution 1";
inline constexpr const char* kSummarySchema = "s2kit.solution-summary/1";

using Solution = std::variant<RadialProfile, ScalarField2D>;

void write_solution(std::ostream& out, const RadialProfile& prof);
void write_solution(std::ostream& out, const ScalarField2D& sol);
/// InputError on a malformed file or a grid whose nodes do not match the
/// rasterized domain.
Solution read_solution(std::istream& in);

void save_solution(const std::string& path, const Solution& sol);
Solution load_solution(const std::string& path);

/// JSON summary: u_min, boundary gradient min/max, iteration counts, admissibility margins.
std::string solution_summary_json(const Solution& sol, const SolveConfig& cfg);

}  // namespace s2kit
