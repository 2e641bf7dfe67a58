#pragma once

// Run configuration shared by every subcommand. Stored as key=value text;
// canonical() writes every key in sorted order so a parsed file reproduces
// the same text.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "s2kit/radial.hpp"

namespace s2kit {

struct RunConfig {
  std::string command = "solve";
  std::string mode = "radial";  ///< radial | grid2d | eigen
  int dim = 3;
  double radius = 1.0;
  std::string domain = "disk:1";
  std::string source = "const:1";
  SolveConfig solver;
  std::vector<double> alphas{1.0};
  std::vector<double> gammas;  ///< empty: the printed convention of the application
  int app = 0;  ///< 0: no a priori bound, principle only
  double p = 1.0;
  double lambda = 1.0;
  std::string principle = "min";  ///< min | max
  std::uint64_t seed = 42;
  std::vector<int> dims{2, 3, 4, 5, 6, 7, 8};
  std::size_t count = 1000;
  std::string sign = "positive";
  std::string out = "out";
  std::string solution;  ///< solution file to verify instead of solving

  /// Sets one key from its text form; InputError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
  static const std::vector<std::string>& keys();

  /// Lines "key = value"; '#' starts a comment. ConfigurationError on a
  /// malformed line, then validate().
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
  std::string canonical() const;
  std::map<std::string, std::string> as_map() const;

  /// ConfigurationError on inconsistent settings.
  void validate() const;
};

/// "2..8", "3" or "2,3,5"
std::vector<int> parse_dims(const std::string& text);
std::string format_dims(const std::vector<int>& dims);

/// Shortest text that parses back to the same double.
std::string format_double(double x);

}  // namespace s2kit
