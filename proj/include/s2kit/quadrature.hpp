#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace s2kit {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Adaptive Simpson on [a, b]; NumericalError when the recursion depth is
/// exhausted before |S2 - S1| <= 15 * tol on every subinterval.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-10,
                        int max_depth = 50);

/// Running integrals C_j = int_0^{x_j} s^power F(s) ds on the uniform grid
/// x_j = j L / n (n even), with F replaced by its quadratic interpolant on each
/// panel [x_{2k}, x_{2k+2}]. Odd nodes use the same interpolant up to the
/// panel midpoint. The weights are exact for integer power <= 9.
class ProductSimpson {
 public:
  ProductSimpson(double length, int n, double power);

  int size() const { return n_; }
  std::vector<double> cumulative(std::span<const double> f) const;

 private:
  int n_;
  // per panel: weights of (F0, F1, F2) over the half panel and over the full panel
  std::vector<std::array<double, 3>> half_;
  std::vector<std::array<double, 3>> full_;
};

}  // namespace s2kit
