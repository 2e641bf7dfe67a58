#include "s2kit/suites.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>

#include "s2kit/domain.hpp"
#include "s2kit/error.hpp"
#include "s2kit/fields.hpp"
#include "s2kit/grid2d.hpp"

namespace s2kit {

std::vector<SolvedCase> solve_cases(const std::vector<CaseSpec>& specs, const SolveConfig& cfg) {
  std::vector<std::future<SolvedCase>> jobs;
  for (const CaseSpec& cs : specs) {
    jobs.push_back(std::async(std::launch::async, [cs, &cfg] {
      const SourceTerm f = SourceTerm::parse(cs.source);
      if (cs.kind == "radial") {
        const RadialProfile p = solve_radial(cs.dim, std::stod(cs.domain), f, cfg);
        return SolvedCase{cs, f, sample_solution(p)};
      }
      if (cs.kind == "grid2d") {
        const ScalarField2D s = solve_grid2d(DomainSpec::parse(cs.domain), f, cfg);
        return SolvedCase{cs, f, sample_solution(s)};
      }
      throw InputError("unknown case kind '" + cs.kind + "'");
    }));
  }
  std::vector<SolvedCase> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::vector<CaseRow> principle_rows(const SolvedCase& c, const std::vector<double>& alphas,
                                    const std::vector<double>& gammas, Extremum mode, const std::string& note) {
  std::vector<CaseRow> rows;
  for (double g : gammas) {
    const PhiField base = pfunction_field(c.sol, c.f, {alphas.front(), g});
    for (double a : alphas) {
      const PhiField phi = base.with_alpha(a);
      const PrincipleVerdict v = verify_principle(phi, mode, default_tol_margin(phi));
      CaseRow r;
      r.case_id = c.spec.id;
      r.domain = c.sol.domain;
      r.source = c.f.describe();
      r.alpha = a;
      r.gamma = g;
      r.mode = to_string(mode);
      r.margin = v.margin;
      r.tol_margin = v.tol_margin;
      r.slack = std::numeric_limits<double>::quiet_NaN();
      r.holds = v.holds;
      r.note = note;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::vector<CaseRow> min_principle_rows(const std::vector<SolvedCase>& cases) {
  std::vector<CaseRow> rows;
  for (const SolvedCase& c : cases) {
    if (!c.f.nonincreasing()) continue;
    const auto tr = find_convexifying_transform(c.sol);
    if (!tr) {
      CaseRow r;
      r.case_id = c.spec.id;
      r.domain = c.sol.domain;
      r.source = c.f.describe();
      r.mode = "min";
      r.note = "no convexifying transform found";
      rows.push_back(r);
      continue;
    }
    auto part = principle_rows(c, {1.0, 1.5, 2.0}, {0.5, 1.0}, Extremum::min, "U = " + tr->name());
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::vector<CaseRow> max_principle_rows(const std::vector<SolvedCase>& cases) {
  std::vector<CaseRow> rows;
  for (const SolvedCase& c : cases) {
    if (!c.f.nondecreasing()) continue;
    const double n = c.sol.dim;
    auto part = principle_rows(c, {1.0 / std::sqrt(0.5 * n * (n - 1.0))}, {0.5}, Extremum::max);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::vector<CaseRow> planar_principle_rows(const std::vector<SolvedCase>& cases) {
  std::vector<CaseRow> rows;
  for (const SolvedCase& c : cases) {
    if (c.sol.dim != 2) continue;
    if (c.f.nondecreasing()) {
      auto part = principle_rows(c, {-2.0, -1.0, 0.0, 0.5, 1.0}, {0.5}, Extremum::max, "(i)");
      rows.insert(rows.end(), part.begin(), part.end());
    }
    if (c.f.nonincreasing()) {
      auto part = principle_rows(c, {-1.0, -0.5, 1.0, 2.0}, {0.5}, Extremum::min, "(ii)");
      rows.insert(rows.end(), part.begin(), part.end());
    }
  }
  return rows;
}

bool IdentityScanReport::passed() const {
  return max_scaled_euler_gap <= 1e-10 && min_scaled_ps_gap >= -1e-9 && h2_fit_residual <= 1e-8;
}

namespace {

SyntheticField menagerie_field(std::uint64_t seed, int dim, int family) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  switch (family) {
    case 0: {
      const SymmetricMatrix h = sample_semidefinite(mix_seed(seed, 1), dim, Sign::positive, 2.0).matrix;
      return SyntheticField::quadratic(h, sample_gaussian_vector(mix_seed(seed, 2), dim), -1.0);
    }
    case 1:
      return SyntheticField::radial_power(dim, 0.5 + 1.5 * uni(rng), 2.0 + 2.0 * uni(rng), 1.0);
    case 2:
      return SyntheticField::gaussian_bump(Vec(dim, 0.0), 0.5 + uni(rng), 0.4 + 0.6 * uni(rng));
    default: {
      Vec a(dim), b(dim);
      for (int i = 0; i < dim; ++i) {
        a[i] = 0.2 + 2.0 * uni(rng);
        b[i] = uni(rng);
      }
      return SyntheticField::polynomial(a, b, 0.2 * (uni(rng) - 0.5));
    }
  }
}

}  // namespace

IdentityScanReport run_identity_scan(std::uint64_t seed, std::size_t count) {
  if (count < 1) throw InputError("identity scan needs count >= 1");
  IdentityScanReport rep;
  rep.seed = seed;
  rep.fields = count;
  rep.min_scaled_ps_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = mix_seed(seed, i);
    const int dim = 2 + static_cast<int>(i % 4);
    const SyntheticField fld = menagerie_field(s, dim, static_cast<int>((i / 4) % 4));
    const Vec x = sample_ball_points(mix_seed(s, 3), dim, 1.0, 1).front();
    const Jet jet = fld.jet(x);
    const double hn = jet.hessian.frobenius_norm();
    rep.max_scaled_euler_gap = std::max(rep.max_scaled_euler_gap, std::abs(euler_identity_gap(jet)) / (1.0 + hn * hn));
    const Spectrum sp = spectrum(jet.hessian);
    if (sp.min() >= -1e-12 * (1.0 + hn)) {
      ++rep.convex_points;
      const double scale = 1.0 + norm_squared(jet.gradient) * hn * hn;
      rep.min_scaled_ps_gap = std::min(rep.min_scaled_ps_gap, philippin_safoui_gap(jet) / scale);
    }
  }
  if (rep.convex_points == 0) rep.min_scaled_ps_gap = 0.0;

  // H2 against the level-set curvatures of radial fields in R^3
  std::vector<double> lg, lr, h2, s2k, grad;
  std::mt19937_64 rng(mix_seed(seed, 0x48325f666974ULL));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const std::size_t probes = std::max<std::size_t>(32, count / 4);
  for (std::size_t i = 0; i < probes; ++i) {
    const SyntheticField fld = SyntheticField::radial_power(3, 0.5 + 1.5 * uni(rng), 2.0 + 2.0 * uni(rng), 1.0);
    Vec x = sample_gaussian_vector(mix_seed(seed, 1000 + i), 3);
    const double scale = (0.1 + 0.9 * uni(rng)) / std::sqrt(norm_squared(x));
    for (double& c : x) c *= scale;
    const CurvatureProbe pr = levelset_h2_extract(fld, x);
    rep.max_h1_gap = std::max(rep.max_h1_gap, std::abs(pr.h1_extracted - pr.h1_geometric) / std::max(1.0, std::abs(pr.h1_geometric)));
    lg.push_back(std::log(pr.grad_norm));
    lr.push_back(std::log(pr.h2_extracted / pr.s2_kappa));
    h2.push_back(pr.h2_extracted);
    s2k.push_back(pr.s2_kappa);
    grad.push_back(pr.grad_norm);
  }
  rep.h2_probes = probes;
  // least squares for log(H2 / S2(kappa)) = k log|grad u| + log c
  const double n = static_cast<double>(probes);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < probes; ++i) {
    sx += lg[i];
    sy += lr[i];
    sxx += lg[i] * lg[i];
    sxy += lg[i] * lr[i];
  }
  rep.h2_fit_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.h2_fit_coefficient = std::exp((sy - rep.h2_fit_exponent * sx) / n);
  for (std::size_t i = 0; i < probes; ++i) {
    const double denom = std::max(1.0, std::abs(h2[i]));
    const double fitted = rep.h2_fit_coefficient * std::pow(grad[i], rep.h2_fit_exponent) * s2k[i];
    rep.h2_fit_residual = std::max(rep.h2_fit_residual, std::abs(h2[i] - fitted) / denom);
    rep.h2_unit_factor_residual = std::max(rep.h2_unit_factor_residual, std::abs(h2[i] - grad[i] * s2k[i]) / denom);
  }
  return rep;
}

}  // namespace s2kit
