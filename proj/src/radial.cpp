#include "s2kit/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "s2kit/error.hpp"
#include "s2kit/quadrature.hpp"

namespace s2kit {

void SolveConfig::validate() const {
  if (!(h > 0.0)) throw ConfigurationError("grid spacing must be positive");
  if (radial_nodes < 8 || radial_nodes % 2 != 0) throw ConfigurationError("radial node count must be even and >= 8");
  if (!(tolerance > 0.0) || !(eigen_tolerance > 0.0)) throw ConfigurationError("tolerances must be positive");
  if (max_iterations < 1) throw ConfigurationError("max_iterations must be at least 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw ConfigurationError("damping must lie in (0, 1]");
}

Vec RadialProfile::second_derivative() const {
  const std::size_t n = r.size();
  const double h = spacing();
  Vec upp(n);
  // odd extension of u' across r = 0
  auto at = [&](long k) { return k < 0 ? -up[static_cast<std::size_t>(-k)] : up[static_cast<std::size_t>(k)]; };
  for (std::size_t j = 0; j < n; ++j) {
    const long k = static_cast<long>(j);
    if (j + 2 < n) {
      upp[j] = (-at(k + 2) + 8.0 * at(k + 1) - 8.0 * at(k - 1) + at(k - 2)) / (12.0 * h);
    } else if (j + 2 == n) {
      upp[j] = (3.0 * at(k + 1) + 10.0 * at(k) - 18.0 * at(k - 1) + 6.0 * at(k - 2) - at(k - 3)) / (12.0 * h);
    } else {
      upp[j] = (25.0 * at(k) - 48.0 * at(k - 1) + 36.0 * at(k - 2) - 16.0 * at(k - 3) + 3.0 * at(k - 4)) / (12.0 * h);
    }
  }
  return upp;
}

std::pair<double, double> RadialProfile::hessian_eigenvalues(std::size_t j) const {
  const Vec upp = second_derivative();
  if (j == 0) return {upp[0], upp[0]};
  return {upp[j], up[j] / r[j]};
}

Jet RadialProfile::jet(std::size_t j, std::span<const double> direction) const {
  if (static_cast<int>(direction.size()) != dim) throw InputError("radial jet: direction has the wrong dimension");
  Vec e(direction.begin(), direction.end());
  const double len = std::sqrt(norm_squared(e));
  if (len == 0.0) throw InputError("radial jet: zero direction");
  for (double& c : e) c /= len;
  const auto [urr, ur_over_r] = hessian_eigenvalues(j);
  Jet jt;
  jt.value = u[j];
  jt.gradient = e;
  for (double& c : jt.gradient) c *= up[j];
  jt.hessian = ur_over_r * SymmetricMatrix::identity(dim) + (urr - ur_over_r) * SymmetricMatrix::outer(e);
  return jt;
}

namespace {

struct Hermite {
  double h0, h1, g0, g1;
};

std::size_t locate(const RadialProfile& p, double rho, double& t, double& h) {
  if (rho < 0.0 || rho > p.radius) throw InputError("radial interpolation outside [0, R]");
  h = p.spacing();
  std::size_t j = std::min(static_cast<std::size_t>(rho / h), p.size() - 2);
  t = (rho - p.r[j]) / h;
  return j;
}

}  // namespace

double RadialProfile::value_at(double rho) const {
  double t, h;
  const std::size_t j = locate(*this, rho, t, h);
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * u[j] + (t3 - 2 * t2 + t) * h * up[j] + (-2 * t3 + 3 * t2) * u[j + 1] +
         (t3 - t2) * h * up[j + 1];
}

double RadialProfile::slope_at(double rho) const {
  double t, h;
  const std::size_t j = locate(*this, rho, t, h);
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * u[j] + (6 * t - 6 * t2) * u[j + 1]) / h + (3 * t2 - 4 * t + 1) * up[j] +
         (3 * t2 - 2 * t) * up[j + 1];
}

namespace {

class RadialIntegrator {
 public:
  RadialIntegrator(int dim, double radius, int n)
      : dim_(dim), radius_(radius), n_(n), weighted_(radius, n, dim - 1.0), plain_(radius, n, 0.0) {
    r_.resize(n + 1);
    for (int j = 0; j <= n; ++j) r_[j] = radius * j / n;
    r_.back() = radius;
  }

  const Vec& nodes() const { return r_; }

  void apply(std::span<const double> rhs, Vec& u, Vec& up) const {
    const Vec c = weighted_.cumulative(rhs);
    up.assign(n_ + 1, 0.0);
    for (int j = 1; j <= n_; ++j) {
      const double v = 2.0 * c[j] / ((dim_ - 1.0) * std::pow(r_[j], dim_ - 2.0));
      up[j] = std::sqrt(std::max(0.0, v));
    }
    const Vec big_u = plain_.cumulative(up);
    u.resize(n_ + 1);
    for (int j = 0; j <= n_; ++j) u[j] = big_u[j] - big_u[n_];
  }

  RadialProfile blank() const {
    RadialProfile p;
    p.dim = dim_;
    p.radius = radius_;
    p.r = r_;
    return p;
  }

 private:
  int dim_;
  double radius_;
  int n_;
  ProductSimpson weighted_;
  ProductSimpson plain_;
  Vec r_;
};

void check_shape(int dim, double radius) {
  if (dim < 2 || dim > kMaxDim) throw InputError("radial solve: dimension must lie in [2, 8]");
  if (!(radius > 0.0)) throw InputError("radial solve: radius must be positive");
}

double sup_diff(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

RadialProfile integrate_radial(int dim, double radius, std::span<const double> rhs) {
  check_shape(dim, radius);
  const int n = static_cast<int>(rhs.size()) - 1;
  RadialIntegrator integ(dim, radius, n);
  RadialProfile p = integ.blank();
  integ.apply(rhs, p.u, p.up);
  return p;
}

RadialProfile solve_radial(int dim, double radius, const SourceTerm& f, const SolveConfig& cfg) {
  check_shape(dim, radius);
  cfg.validate();
  const int n = cfg.radial_nodes;
  RadialIntegrator integ(dim, radius, n);
  RadialProfile p = integ.blank();
  p.source = f.describe();
  p.u.assign(n + 1, 0.0);
  Vec rhs(n + 1), next_u, next_up;
  // f(0) = 0 (power sources): u = 0 is a fixed point, start from the f = 1 profile instead
  if (!(f(0.0) > 0.0)) {
    std::fill(rhs.begin(), rhs.end(), 1.0);
    integ.apply(rhs, next_u, next_up);
    p.u.swap(next_u);
  }
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    for (int j = 0; j <= n; ++j) {
      rhs[j] = f(p.u[j]);
      if (!std::isfinite(rhs[j]))
        throw SolverError("radial Picard iteration diverged for " + f.describe() + ": f overflows at u = " +
                          std::to_string(p.u[j]));
      const bool ok = p.u[j] < 0.0 ? rhs[j] > 0.0 : rhs[j] >= 0.0;
      if (!ok)
        throw SourceError("source " + f.describe() + " is not positive at u = " + std::to_string(p.u[j]));
    }
    integ.apply(rhs, next_u, next_up);
    const double defect = sup_diff(next_u, p.u);
    p.u.swap(next_u);
    p.up.swap(next_up);
    p.defect_history.push_back(defect);
    p.iterations = it;
    p.final_defect = defect;
    if (!std::isfinite(defect) || defect > 1e8) break;
    if (defect <= cfg.tolerance) return p;
  }
  std::ostringstream msg;
  msg << "radial Picard iteration did not converge for " << f.describe() << " (N=" << dim << ", R=" << radius
      << "); defect history:";
  for (std::size_t k = 0; k < p.defect_history.size(); k += std::max<std::size_t>(1, p.defect_history.size() / 8))
    msg << ' ' << p.defect_history[k];
  msg << ' ' << p.final_defect;
  throw SolverError(msg.str());
}

double radial_equation_residual(const RadialProfile& prof, const SourceTerm& f) {
  const Vec upp = prof.second_derivative();
  const double n = prof.dim;
  double worst = 0.0;
  for (std::size_t j = 0; j < prof.size(); ++j) {
    double s2;
    if (j == 0) {
      s2 = 0.5 * n * (n - 1.0) * upp[0] * upp[0];
    } else {
      const double q = prof.up[j] / prof.r[j];
      s2 = (n - 1.0) * upp[j] * q + 0.5 * (n - 1.0) * (n - 2.0) * q * q;
    }
    worst = std::max(worst, std::abs(s2 - f(prof.u[j])));
  }
  return worst;
}

EigenResult solve_eigen_radial(int dim, double radius, const SolveConfig& cfg, EigenStart start) {
  check_shape(dim, radius);
  cfg.validate();
  const int n = cfg.radial_nodes;
  RadialIntegrator integ(dim, radius, n);
  const Vec& r = integ.nodes();
  Vec w(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double x = r[j] / radius;
    w[j] = start == EigenStart::parabola ? x * x - 1.0 : -std::cos(0.5 * M_PI * x);
  }
  EigenResult res;
  Vec rhs(n + 1), v, vp;
  double prev = 0.0;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    for (int j = 0; j <= n; ++j) rhs[j] = w[j] * w[j];
    integ.apply(rhs, v, vp);
    const double sup = -*std::min_element(v.begin(), v.end());
    if (!(sup > 0.0) || !std::isfinite(sup)) throw SolverError("eigen iteration produced a degenerate iterate");
    const double lambda = 1.0 / (sup * sup);
    for (int j = 0; j <= n; ++j) {
      w[j] = v[j] / sup;
      vp[j] /= sup;
    }
    res.lambda_history.push_back(lambda);
    res.iterations = it;
    if (it > 1 && std::abs(lambda - prev) < cfg.eigen_tolerance * std::max(1.0, lambda)) {
      res.lambda = lambda;
      res.profile = integ.blank();
      res.profile.source = SourceTerm::eigen(lambda).describe();
      res.profile.u = w;
      res.profile.up = vp;
      res.profile.iterations = it;
      res.profile.final_defect = std::abs(lambda - prev);
      res.profile.defect_history = res.lambda_history;
      res.residual = radial_equation_residual(res.profile, SourceTerm::eigen(lambda));
      return res;
    }
    prev = lambda;
  }
  throw SolverError("eigen inverse iteration stagnated after " + std::to_string(cfg.max_iterations) +
                    " iterations (last lambda " + std::to_string(prev) + ")");
}

}  // namespace s2kit
