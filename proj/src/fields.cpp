#include "s2kit/fields.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "s2kit/error.hpp"

namespace s2kit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double s2_of(const SymmetricMatrix& h) {
  const double tr = h.trace();
  return 0.5 * (tr * tr - contract(h, h));
}

}  // namespace

SyntheticField SyntheticField::quadratic(SymmetricMatrix h, Vec g, double c) {
  if (static_cast<int>(g.size()) != h.dim()) throw InputError("quadratic field: gradient length mismatch");
  const int dim = h.dim();
  return SyntheticField(dim, Quadratic{std::move(h), std::move(g), c});
}

SyntheticField SyntheticField::radial_power(int dim, double a, double p, double radius) {
  if (dim < 1 || dim > kMaxDim) throw InputError("radial field: dimension outside [1, 8]");
  if (p < 2.0) throw InputError("radial field: exponent must be >= 2");
  if (radius <= 0.0) throw InputError("radial field: radius must be positive");
  return SyntheticField(dim, RadialPower{a, p, radius});
}

SyntheticField SyntheticField::gaussian_bump(Vec center, double amplitude, double width) {
  if (center.empty() || static_cast<int>(center.size()) > kMaxDim) throw InputError("bump: bad dimension");
  if (width <= 0.0) throw InputError("bump: width must be positive");
  const int dim = static_cast<int>(center.size());
  return SyntheticField(dim, Bump{std::move(center), amplitude, width});
}

SyntheticField SyntheticField::polynomial(Vec a, Vec b, double c) {
  if (a.size() != b.size() || a.empty() || static_cast<int>(a.size()) > kMaxDim)
    throw InputError("polynomial field: coefficient vectors must have equal length in [1, 8]");
  if (c != 0.0 && a.size() < 2) throw InputError("polynomial field: cross term needs dimension >= 2");
  const int dim = static_cast<int>(a.size());
  return SyntheticField(dim, Polynomial{std::move(a), std::move(b), c});
}

SyntheticField::Family SyntheticField::family() const {
  return std::visit(overloaded{[](const Quadratic&) { return Family::quadratic; },
                               [](const RadialPower&) { return Family::radial_power; },
                               [](const Bump&) { return Family::gaussian_bump; },
                               [](const Polynomial&) { return Family::polynomial; }},
                    data_);
}

std::string to_string(SyntheticField::Family family) {
  switch (family) {
    case SyntheticField::Family::quadratic: return "quadratic";
    case SyntheticField::Family::radial_power: return "radial-power";
    case SyntheticField::Family::gaussian_bump: return "gaussian-bump";
    case SyntheticField::Family::polynomial: return "polynomial";
  }
  return "unknown";
}

void SyntheticField::check_point(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw InputError("field evaluated at a point of the wrong dimension");
}

double SyntheticField::value(std::span<const double> x) const {
  check_point(x);
  return std::visit(
      overloaded{
          [&](const Quadratic& q) { return 0.5 * dot(x, q.h.apply(x)) + dot(q.g, x) + q.c; },
          [&](const RadialPower& rp) {
            return rp.a * (std::pow(std::sqrt(norm_squared(x)), rp.p) - std::pow(rp.radius, rp.p));
          },
          [&](const Bump& b) {
            double d2 = 0.0;
            for (int i = 0; i < dim_; ++i) d2 += (x[i] - b.center[i]) * (x[i] - b.center[i]);
            return -b.amplitude * std::exp(-d2 / (2.0 * b.width * b.width));
          },
          [&](const Polynomial& p) {
            double u = 0.0;
            for (int i = 0; i < dim_; ++i) {
              const double x2 = x[i] * x[i];
              u += 0.5 * p.a[i] * x2 + 0.25 * p.b[i] * x2 * x2;
            }
            if (dim_ >= 2) u += p.c * x[0] * x[1];
            return u;
          }},
      data_);
}

Vec SyntheticField::gradient(std::span<const double> x) const {
  check_point(x);
  return std::visit(
      overloaded{
          [&](const Quadratic& q) {
            Vec g = q.h.apply(x);
            for (int i = 0; i < dim_; ++i) g[i] += q.g[i];
            return g;
          },
          [&](const RadialPower& rp) {
            const double rho2 = norm_squared(x);
            Vec g(x.begin(), x.end());
            const double f = rho2 == 0.0 ? 0.0 : rp.a * rp.p * std::pow(rho2, 0.5 * rp.p - 1.0);
            for (double& gi : g) gi *= f;
            return g;
          },
          [&](const Bump& b) {
            Vec d(dim_);
            double d2 = 0.0;
            for (int i = 0; i < dim_; ++i) {
              d[i] = x[i] - b.center[i];
              d2 += d[i] * d[i];
            }
            const double w2 = b.width * b.width;
            const double g = b.amplitude * std::exp(-d2 / (2.0 * w2)) / w2;
            for (double& di : d) di *= g;
            return d;
          },
          [&](const Polynomial& p) {
            Vec g(dim_);
            for (int i = 0; i < dim_; ++i) g[i] = p.a[i] * x[i] + p.b[i] * x[i] * x[i] * x[i];
            if (dim_ >= 2) {
              g[0] += p.c * x[1];
              g[1] += p.c * x[0];
            }
            return g;
          }},
      data_);
}

SymmetricMatrix SyntheticField::hessian(std::span<const double> x) const {
  check_point(x);
  return std::visit(
      overloaded{
          [&](const Quadratic& q) { return q.h; },
          [&](const RadialPower& rp) {
            const double rho2 = norm_squared(x);
            SymmetricMatrix h(dim_);
            if (rho2 == 0.0) {
              // p = 2 is the only exponent with a nonzero Hessian at the origin
              if (rp.p == 2.0) h = (2.0 * rp.a) * SymmetricMatrix::identity(dim_);
              return h;
            }
            const double iso = rp.a * rp.p * std::pow(rho2, 0.5 * rp.p - 1.0);
            const double radial = rp.a * rp.p * (rp.p - 2.0) * std::pow(rho2, 0.5 * rp.p - 2.0);
            return iso * SymmetricMatrix::identity(dim_) + radial * SymmetricMatrix::outer(x);
          },
          [&](const Bump& b) {
            Vec d(dim_);
            double d2 = 0.0;
            for (int i = 0; i < dim_; ++i) {
              d[i] = x[i] - b.center[i];
              d2 += d[i] * d[i];
            }
            const double w2 = b.width * b.width;
            const double g = b.amplitude * std::exp(-d2 / (2.0 * w2));
            return (g / w2) * SymmetricMatrix::identity(dim_) - (g / (w2 * w2)) * SymmetricMatrix::outer(d);
          },
          [&](const Polynomial& p) {
            SymmetricMatrix h(dim_);
            for (int i = 0; i < dim_; ++i) h.set(i, i, p.a[i] + 3.0 * p.b[i] * x[i] * x[i]);
            if (dim_ >= 2) h.set(0, 1, p.c);
            return h;
          }},
      data_);
}

Jet SyntheticField::jet(std::span<const double> x) const { return {value(x), gradient(x), hessian(x)}; }

FdConsistency fd_consistency(const SyntheticField& fld, std::span<const double> x, double h) {
  const int n = fld.dim();
  const Jet j = fld.jet(x);
  Vec p(x.begin(), x.end());
  auto at = [&](int i, double di, int k, double dk) {
    Vec q = p;
    q[i] += di;
    q[k] += dk;
    return fld.value(q);
  };
  FdConsistency out;
  const double u0 = fld.value(p);
  for (int i = 0; i < n; ++i) {
    const double fd = (at(i, h, i, 0.0) - at(i, -h, i, 0.0)) / (2.0 * h);
    out.gradient_error =
        std::max(out.gradient_error, std::abs(fd - j.gradient[i]) / std::max(1.0, std::abs(j.gradient[i])));
    for (int k = i; k < n; ++k) {
      double fd2;
      if (i == k) {
        fd2 = (at(i, h, i, 0.0) - 2.0 * u0 + at(i, -h, i, 0.0)) / (h * h);
      } else {
        fd2 = (at(i, h, k, h) - at(i, h, k, -h) - at(i, -h, k, h) + at(i, -h, k, -h)) / (4.0 * h * h);
      }
      const double ex = j.hessian(i, k);
      out.hessian_error = std::max(out.hessian_error, std::abs(fd2 - ex) / std::max(1.0, std::abs(ex)));
    }
  }
  return out;
}

double euler_identity_gap(const Jet& jet) {
  return contract(cofactor_s2(jet.hessian), jet.hessian) - 2.0 * elem_sym(jet.hessian, 2);
}

double euler_identity_gap(const SyntheticField& fld, std::span<const double> x) {
  return euler_identity_gap(fld.jet(x));
}

CurvatureProbe levelset_h2_extract(const Jet& jet, std::span<const double> x) {
  const SymmetricMatrix& h = jet.hessian;
  const int n = h.dim();
  const double g2 = norm_squared(jet.gradient);
  const double g = std::sqrt(g2);
  if (g < 1e-8) throw PreconditionError("level-set probe rejected: |grad u| < 1e-8");

  CurvatureProbe pr;
  pr.point.assign(x.begin(), x.end());
  pr.grad_norm = g;
  pr.s2_value = s2_of(h);
  const SymmetricMatrix cof = cofactor_s2(h);
  const Vec hg = h.apply(jet.gradient);
  pr.lhs_334 = dot(cof.apply(jet.gradient), hg);
  pr.h2_extracted = (pr.s2_value * g2 - pr.lhs_334) / (g2 * g);
  pr.h1_extracted = dot(jet.gradient, cof.apply(jet.gradient)) / (g2 * g);

  // Orthonormal tangent frame by Gram-Schmidt against the unit normal.
  Vec nrm = jet.gradient;
  for (double& c : nrm) c /= g;
  std::vector<Vec> frame{nrm};
  for (int e = 0; e < n && static_cast<int>(frame.size()) < n; ++e) {
    Vec t(n, 0.0);
    t[e] = 1.0;
    for (const Vec& f : frame) {
      const double d = dot(t, f);
      for (int i = 0; i < n; ++i) t[i] -= d * f[i];
    }
    const double len = std::sqrt(norm_squared(t));
    if (len < 1e-6) continue;
    for (double& c : t) c /= len;
    frame.push_back(std::move(t));
  }
  if (n >= 2) {
    SymmetricMatrix shape(n - 1);
    for (int a = 0; a < n - 1; ++a) {
      const Vec ha = h.apply(frame[a + 1]);
      for (int b = a; b < n - 1; ++b) shape.set(a, b, dot(ha, frame[b + 1]) / g);
    }
    const Spectrum k = spectrum(shape);
    pr.curvatures.assign(k.values().begin(), k.values().end());
    pr.s2_kappa = elem_sym(k.values(), 2);
    pr.h1_geometric = k.sum();
  }
  pr.h2_candidate = g * pr.s2_kappa;
  return pr;
}

CurvatureProbe levelset_h2_extract(const SyntheticField& fld, std::span<const double> x) {
  return levelset_h2_extract(fld.jet(x), x);
}

double philippin_safoui_gap(const Jet& jet) {
  const SymmetricMatrix& h = jet.hessian;
  const Vec hg = h.apply(jet.gradient);
  const double q = dot(hg, jet.gradient);
  const double t = norm_squared(hg);
  return norm_squared(jet.gradient) * s2_of(h) - (q * h.trace() - t);
}

double philippin_safoui_gap(const SyntheticField& fld, std::span<const double> x) {
  return philippin_safoui_gap(fld.jet(x));
}

Transform Transform::neg_power(double e) {
  if (e == 0.0) throw SingularTransformError("-(-t)^e with e = 0 is constant");
  if (!std::isfinite(e)) throw InputError("transform exponent must be finite");
  return Transform(Kind::neg_power, e);
}

std::string Transform::name() const {
  switch (kind_) {
    case Kind::identity: return "identity";
    case Kind::neg_sqrt: return "-sqrt(-t)";
    case Kind::neg_log: return "-log(-t)";
    case Kind::neg_power: return "-(-t)^" + std::to_string(exponent_);
  }
  return "unknown";
}

void Transform::check_domain(double t) const {
  if (kind_ != Kind::identity && !(t < 0.0))
    throw DomainError(name() + " is defined for t < 0 only (got " + std::to_string(t) + ")");
}

double Transform::value(double t) const {
  check_domain(t);
  switch (kind_) {
    case Kind::identity: return t;
    case Kind::neg_sqrt: return -std::sqrt(-t);
    case Kind::neg_log: return -std::log(-t);
    case Kind::neg_power: return -std::pow(-t, exponent_);
  }
  return 0.0;
}

double Transform::first(double t) const {
  check_domain(t);
  switch (kind_) {
    case Kind::identity: return 1.0;
    case Kind::neg_sqrt: return 0.5 / std::sqrt(-t);
    case Kind::neg_log: return -1.0 / t;
    case Kind::neg_power: return exponent_ * std::pow(-t, exponent_ - 1.0);
  }
  return 0.0;
}

double Transform::second(double t) const {
  check_domain(t);
  switch (kind_) {
    case Kind::identity: return 0.0;
    case Kind::neg_sqrt: return 0.25 * std::pow(-t, -1.5);
    case Kind::neg_log: return 1.0 / (t * t);
    case Kind::neg_power: return exponent_ * (1.0 - exponent_) * std::pow(-t, exponent_ - 2.0);
  }
  return 0.0;
}

TransformEval Transform::eval(double t) const { return TransformEval::from_derivatives(t, first(t), second(t)); }

SymmetricMatrix transform_hessian(const Jet& jet, const Transform& tr) {
  return tr.first(jet.value) * jet.hessian + tr.second(jet.value) * SymmetricMatrix::outer(jet.gradient);
}

SymmetricMatrix transform_hessian(const SyntheticField& fld, const Transform& tr, std::span<const double> x) {
  return transform_hessian(fld.jet(x), tr);
}

ConvexityReport convexity_scan(std::span<const Jet> jets, const Transform& tr) {
  ConvexityReport rep;
  bool first = true;
  for (std::size_t i = 0; i < jets.size(); ++i) {
    const SymmetricMatrix hu = transform_hessian(jets[i], tr);
    const double lmin = spectrum(hu).min();
    const double scaled = lmin / (1.0 + hu.frobenius_norm());
    if (first || scaled < rep.min_scaled_eigenvalue) {
      rep.min_scaled_eigenvalue = scaled;
      rep.worst_index = i;
    }
    rep.min_eigenvalue = first ? lmin : std::min(rep.min_eigenvalue, lmin);
    first = false;
    ++rep.points;
  }
  rep.convex = rep.points == 0 || rep.min_scaled_eigenvalue >= -1e-8;
  return rep;
}

ConvexityReport convexity_scan(const SyntheticField& fld, const Transform& tr, std::span<const Vec> points) {
  std::vector<Jet> jets;
  jets.reserve(points.size());
  for (const Vec& p : points) jets.push_back(fld.jet(p));
  return convexity_scan(jets, tr);
}

std::vector<Vec> sample_ball_points(std::uint64_t seed, int dim, double radius, std::size_t count) {
  if (dim < 1 || dim > kMaxDim) throw InputError("sample_ball_points: dimension outside [1, 8]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Vec> pts;
  pts.reserve(count);
  while (pts.size() < count) {
    Vec p(dim);
    for (double& c : p) c = normal(rng);
    const double len = std::sqrt(norm_squared(p));
    if (len == 0.0) continue;
    const double rho = radius * std::pow(unif(rng), 1.0 / dim);
    for (double& c : p) c *= rho / len;
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace s2kit
