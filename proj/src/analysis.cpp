#include "s2kit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "s2kit/admissibility.hpp"
#include "s2kit/error.hpp"
#include "s2kit/quadrature.hpp"

namespace s2kit {

std::size_t SampledSolution::argmin() const {
  if (interior.empty()) throw SolverError("solution has no interior nodes");
  std::size_t best = 0;
  for (std::size_t k = 1; k < interior.size(); ++k)
    if (interior[k].u < interior[best].u) best = k;
  return best;
}

SampledSolution sample_solution(const RadialProfile& prof) {
  SampledSolution s;
  s.dim = prof.dim;
  s.spacing = prof.spacing();
  char buf[64];
  std::snprintf(buf, sizeof buf, "ball:%d:%.17g", prof.dim, prof.radius);
  s.domain = buf;
  s.source = prof.source;
  s.jets = solution_jets(prof);
  const std::size_t n = prof.size() - 1;
  for (std::size_t j = 0; j < n; ++j) {
    SampledSolution::Node nd;
    nd.x.assign(prof.dim, 0.0);
    nd.x[0] = prof.r[j];
    nd.u = prof.u[j];
    nd.grad_norm = std::abs(prof.up[j]);
    nd.distance = prof.radius - prof.r[j];
    s.interior.push_back(std::move(nd));
    const bool left = j == 0 || prof.u[j] <= prof.u[j - 1];
    const bool right = j + 1 >= n || prof.u[j] <= prof.u[j + 1];
    if (left && right) s.local_minima.push_back(j);
  }
  SampledSolution::Node b;
  b.x.assign(prof.dim, 0.0);
  b.x[0] = prof.radius;
  b.u = prof.u.back();
  b.grad_norm = std::abs(prof.up.back());
  s.boundary.push_back(std::move(b));
  return s;
}

SampledSolution sample_solution(const ScalarField2D& sol) {
  SampledSolution s;
  s.dim = 2;
  s.spacing = sol.mask->h();
  s.domain = sol.mask->domain().describe();
  s.source = sol.source;
  s.jets = solution_jets(sol);
  const auto& nodes = sol.mask->nodes();
  for (std::size_t k = 0; k < sol.u.size(); ++k) {
    SampledSolution::Node nd;
    nd.x = {nodes[k].pos[0], nodes[k].pos[1]};
    nd.u = sol.u[k];
    nd.grad_norm = std::sqrt(norm_squared(s.jets[k].gradient));
    nd.distance = closest_boundary_point(sol.mask->domain(), nd.x).distance;
    s.interior.push_back(std::move(nd));
    bool is_min = true;
    for (int d = 0; d < kDirections && is_min; ++d) is_min = sol.u[k] <= sol.neighbour_value(k, d);
    if (is_min) s.local_minima.push_back(k);
  }
  for (const BoundaryGradient& g : sol.boundary_gradients()) {
    SampledSolution::Node nd;
    nd.x = {g.point[0], g.point[1]};
    nd.grad_norm = g.grad_norm;
    s.boundary.push_back(std::move(nd));
  }
  return s;
}

void PFunctionSpec::validate() const {
  if (gamma != 0.5 && gamma != 1.0) throw InputError("P-function exponent gamma must be 1/2 or 1");
  if (!std::isfinite(alpha)) throw InputError("P-function alpha must be finite");
}

double pfunction_integral(const SourceTerm& f, double u, double gamma) {
  if (u >= 0.0) return 0.0;
  // s = u t^2 tames the (-s)^q endpoint behaviour of power sources at s = 0
  const auto g = [&](double t) {
    const double s = u * t * t;
    const double fs = gamma == 1.0 ? f(s) : std::pow(f(s), gamma);
    return 2.0 * (-u) * t * fs;
  };
  return adaptive_simpson(g, 0.0, 1.0, 1e-10);
}

PhiField PhiField::with_alpha(double a) const {
  PhiField out = *this;
  out.spec.alpha = a;
  for (auto& s : out.samples) s.value = s.grad_sq + 2.0 * a * s.integral;
  return out;
}

double PhiField::max_abs() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, std::abs(s.value));
  return m;
}

PhiField pfunction_field(const SampledSolution& sol, const SourceTerm& f, const PFunctionSpec& spec) {
  spec.validate();
  PhiField phi;
  phi.spec = spec;
  phi.spacing = sol.spacing;
  phi.samples.reserve(sol.interior.size() + sol.boundary.size());
  for (const auto& nd : sol.interior) {
    PhiField::Sample s;
    s.x = nd.x;
    s.u = nd.u;
    s.grad_sq = nd.grad_norm * nd.grad_norm;
    s.integral = pfunction_integral(f, nd.u, spec.gamma);
    s.distance = nd.distance;
    phi.samples.push_back(std::move(s));
  }
  for (const auto& nd : sol.boundary) {
    PhiField::Sample s;
    s.x = nd.x;
    s.grad_sq = nd.grad_norm * nd.grad_norm;
    s.boundary = true;
    phi.samples.push_back(std::move(s));
  }
  return phi.with_alpha(spec.alpha);
}

std::string to_string(Extremum mode) { return mode == Extremum::min ? "min" : "max"; }

double default_tol_margin(const PhiField& phi) {
  return 5.0 * phi.spacing * phi.spacing * std::max(1.0, phi.max_abs());
}

PrincipleVerdict verify_principle(const PhiField& phi, Extremum mode, double tol_margin) {
  PrincipleVerdict v;
  v.mode = mode;
  v.tol_margin = tol_margin;
  const double sign = mode == Extremum::min ? 1.0 : -1.0;
  // work with sign * Phi so both modes look for a minimum
  const PhiField::Sample* in = nullptr;
  const PhiField::Sample* bd = nullptr;
  const PhiField::Sample* crit = nullptr;
  for (const auto& s : phi.samples) {
    const PhiField::Sample*& slot = s.boundary ? bd : in;
    if (!slot || sign * s.value < sign * slot->value) slot = &s;
    if (!s.boundary && (!crit || s.u < crit->u)) crit = &s;
  }
  if (!bd) throw PreconditionError("P-function has no boundary samples");
  v.boundary = {bd->value, bd->x, 0.0};
  if (!in) {
    v.holds = true;
    return v;
  }
  v.interior = {in->value, in->x, in->distance};
  v.margin = sign * (in->value - bd->value);
  v.critical_excess = sign * (crit->value - bd->value);
  v.holds = v.margin >= -tol_margin;
  v.distance_of_argextreme_to_boundary = v.margin < 0.0 ? in->distance : 0.0;
  return v;
}

Transform transform_preset(int application, double p) {
  Transform tr = Transform::identity();
  switch (application) {
    case 1:
      tr = Transform::neg_sqrt();
      break;
    case 2:
      tr = Transform::neg_log();
      break;
    case 3:
      if (!(p > 0.0 && p < 2.0)) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "application 3 needs 0 < p < 2: for p = %g the transform -(-t)^{(2-p)/4} is %s on (-inf, 0)",
                      p, p > 2.0 ? "strictly decreasing" : p == 2.0 ? "constant" : "not covered by the convexity result");
        throw HypothesisError(buf);
      }
      tr = Transform::neg_power((2.0 - p) / 4.0);
      break;
    default:
      throw InputError("unknown application " + std::to_string(application) + " (expected 1, 2 or 3)");
  }
  for (double t = -1e4; t <= -1e-4; t *= 0.1)
    if (!(tr.first(t) > 0.0)) throw InternalError("transform " + tr.name() + " is not increasing");
  return tr;
}

std::optional<Transform> find_convexifying_transform(const SampledSolution& sol) {
  for (const Transform& tr : {Transform::identity(), Transform::neg_sqrt(), Transform::neg_log()})
    if (convexity_scan(sol.jets, tr).convex) return tr;
  return std::nullopt;
}

namespace {

double boundary_grad_min_sq(const SampledSolution& sol) {
  if (sol.boundary.empty()) throw PreconditionError("solution has no boundary samples");
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : sol.boundary) m = std::min(m, b.grad_norm * b.grad_norm);
  return m;
}

}  // namespace

BoundsReport bounds_report(const SampledSolution& sol, const SourceTerm& f, int application) {
  using P = SourceTerm::Preset;
  const P want = application == 1 ? P::constant : application == 2 ? P::eigen : P::power;
  if (application < 1 || application > 3) throw InputError("unknown application " + std::to_string(application));
  if (f.preset() != want)
    throw InputError("application " + std::to_string(application) + " does not apply to source " + f.describe());

  BoundsReport rep;
  rep.application = application;
  rep.u_min = sol.interior[sol.argmin()].u;
  const double um = rep.u_min;
  switch (application) {
    case 1:
      rep.lhs_closed_form = -2.0 * f(0.0) * um;
      break;
    case 2:
      rep.lhs_closed_form = -(2.0 / 3.0) * f(-1.0) * um * um * um;
      break;
    default: {
      const double p = f.exponent();
      rep.lhs_closed_form = 2.0 * f(-1.0) / (p + 1.0) * std::pow(-um, p + 1.0);
    }
  }
  rep.lhs = 2.0 * pfunction_integral(f, um, 1.0);
  rep.lhs_gamma_half = 2.0 * pfunction_integral(f, um, 0.5);
  rep.rhs = boundary_grad_min_sq(sol);
  rep.slack = rep.lhs - rep.rhs;
  rep.slack_gamma_half = rep.lhs_gamma_half - rep.rhs;
  rep.scale = std::max({1.0, rep.lhs, rep.rhs});

  rep.pointwise_min_slack = rep.pointwise_min_slack_gamma_half = std::numeric_limits<double>::infinity();
  for (const auto& nd : sol.interior) {
    const double loss = rep.rhs - nd.grad_norm * nd.grad_norm;
    rep.pointwise_min_slack = std::min(rep.pointwise_min_slack, 2.0 * pfunction_integral(f, nd.u, 1.0) - loss);
    rep.pointwise_min_slack_gamma_half =
        std::min(rep.pointwise_min_slack_gamma_half, 2.0 * pfunction_integral(f, nd.u, 0.5) - loss);
  }

  try {
    const Transform tr = transform_preset(application, application == 3 ? f.exponent() : 1.0);
    rep.transform = tr.name();
    rep.convexity = convexity_scan(sol.jets, tr);
    if (!f.nonincreasing())
      rep.reason = "source " + f.describe() + " is increasing in u";
    else if (!rep.convexity.convex)
      rep.reason = "U(u) with U = " + tr.name() + " is not convex on the solution";
  } catch (const HypothesisError& e) {
    rep.reason = e.what();
  }
  rep.hypothesis_met = rep.reason.empty();
  rep.holds = rep.hypothesis_met && rep.slack >= -1e-6 * rep.scale;
  return rep;
}

CriticalPointReport critical_point_report(const SampledSolution& sol, const SourceTerm& f, double alpha) {
  const std::size_t k = sol.argmin();
  if (!(sol.interior[k].u < 0.0)) throw SolverError("u has no negative interior minimum");
  CriticalPointReport rep;
  rep.location = sol.interior[k].x;
  rep.u_value = sol.interior[k].u;
  rep.f_value = f(rep.u_value);
  const SymmetricMatrix& hess = sol.jets[k].hessian;
  const Spectrum sp = spectrum(hess);
  rep.spectrum.assign(sp.values().begin(), sp.values().end());
  const double sqrt_f = std::sqrt(rep.f_value);
  rep.max_ratio = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < hess.dim(); ++i) rep.max_ratio = std::max(rep.max_ratio, hess(i, i) / sqrt_f);
  const double n = sol.dim;
  rep.binom_bound = 1.0 / std::sqrt(0.5 * n * (n - 1.0));
  rep.alpha = alpha;
  rep.alpha_dominates = rep.max_ratio <= alpha;
  rep.s2_value = elem_sym(hess, 2);
  rep.s2_relative_error = std::abs(rep.s2_value - rep.f_value) / rep.f_value;
  rep.positive_definite = sp.min() > 0.0;
  // separated local minima count as distinct critical points; neighbours of the argmin do not
  const double reach = 2.0 * std::sqrt(2.0) * sol.spacing;
  rep.unique_minimum = std::all_of(sol.local_minima.begin(), sol.local_minima.end(), [&](std::size_t m) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < rep.location.size(); ++i)
      d2 += (sol.interior[m].x[i] - rep.location[i]) * (sol.interior[m].x[i] - rep.location[i]);
    return std::sqrt(d2) <= reach;
  });
  return rep;
}

std::string csv_header() { return "case,domain,source,alpha,gamma,mode,margin,tol_margin,slack,holds,note"; }

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string to_csv(const CaseRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%.17g,%.17g,%.17g,%s", r.alpha, r.gamma, r.mode.c_str(), r.margin,
                r.tol_margin, r.slack, r.holds ? "true" : "false");
  return csv_field(r.case_id) + "," + csv_field(r.domain) + "," + csv_field(r.source) + "," + buf + "," +
         csv_field(r.note);
}

}  // namespace s2kit
