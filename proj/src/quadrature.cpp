#include "s2kit/quadrature.hpp"

#include <array>
#include <cmath>

#include "s2kit/error.hpp"

namespace s2kit {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw InputError("Gauss-Legendre rule needs n >= 1");
  GaussRule g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = g.weights[n - 1 - i] = w;
  }
  return g;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b, double fb, double m,
                    double fm, double whole, double tol, int depth, bool& ok) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) {
    ok = false;
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, ok) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, ok);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double rel_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // the coarse estimate sets the absolute scale of the tolerance
  const double tol = rel_tol * std::max(std::abs(whole), 1e-300);
  bool ok = true;
  const double v = simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth, ok);
  if (!ok || !std::isfinite(v)) throw NumericalError("adaptive Simpson did not reach the requested tolerance");
  return v;
}

ProductSimpson::ProductSimpson(double length, int n, double power) : n_(n) {
  if (n < 2 || n % 2 != 0) throw InputError("product Simpson needs an even node count");
  if (!(length > 0.0)) throw InputError("product Simpson needs a positive length");
  const double h = length / n;
  const GaussRule g = gauss_legendre(6);
  const int panels = n / 2;
  half_.resize(panels);
  full_.resize(panels);
  for (int k = 0; k < panels; ++k) {
    const double x0 = 2.0 * k * h;
    std::array<double, 3> wh{}, wf{};
    for (int part = 0; part < 2; ++part) {
      const double a = x0 + part * h;
      for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        const double s = a + 0.5 * h * (g.nodes[q] + 1.0);
        const double w = 0.5 * h * g.weights[q] * std::pow(s, power);
        const double t = (s - x0) / h;  // local coordinate in [0, 2]
        const std::array<double, 3> lag{0.5 * (t - 1.0) * (t - 2.0), -t * (t - 2.0), 0.5 * t * (t - 1.0)};
        for (int m = 0; m < 3; ++m) {
          wf[m] += w * lag[m];
          if (part == 0) wh[m] += w * lag[m];
        }
      }
    }
    half_[k] = wh;
    full_[k] = wf;
  }
}

std::vector<double> ProductSimpson::cumulative(std::span<const double> f) const {
  if (static_cast<int>(f.size()) != n_ + 1) throw InputError("product Simpson: sample count mismatch");
  std::vector<double> c(f.size(), 0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < full_.size(); ++k) {
    const std::size_t j = 2 * k;
    const double f0 = f[j], f1 = f[j + 1], f2 = f[j + 2];
    c[j + 1] = acc + half_[k][0] * f0 + half_[k][1] * f1 + half_[k][2] * f2;
    acc += full_[k][0] * f0 + full_[k][1] * f1 + full_[k][2] * f2;
    c[j + 2] = acc;
  }
  return c;
}

}  // namespace s2kit
