#include "s2kit/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "s2kit/error.hpp"

namespace s2kit {

std::string to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::positive: return "positive";
    case SampleKind::negative: return "negative";
    case SampleKind::indefinite: return "indefinite";
  }
  return "unknown";
}

SampleKind parse_sample_kind(const std::string& text) {
  if (text == "positive") return SampleKind::positive;
  if (text == "negative") return SampleKind::negative;
  if (text == "indefinite") return SampleKind::indefinite;
  throw InputError("unknown sample sign '" + text + "' (expected positive, negative or indefinite)");
}

bool CampaignReport::passed() const {
  return std::all_of(dims.begin(), dims.end(), [](const DimSummary& d) { return d.violations == 0; });
}

bool sample_passes(const InequalityRecord& rec, int dim, SampleKind kind) {
  if (!rec.closed_form_agrees(1e-9)) return false;
  switch (kind) {
    case SampleKind::positive: return rec.residual_direct >= -1e-9 * rec.scale;
    case SampleKind::negative: return rec.residual_direct <= 1e-9 * rec.scale;
    case SampleKind::indefinite:
      return dim > 3 || std::abs(rec.residual_direct) <= 1e-10 * rec.scale;
  }
  return false;
}

CampaignRecord draw_inequality_sample(std::uint64_t seed, int dim, std::size_t index, SampleKind kind) {
  const std::uint64_t sample_seed = mix_seed(mix_seed(seed, static_cast<std::uint64_t>(dim)), index);
  SymmetricMatrix a = kind == SampleKind::indefinite
                          ? sample_symmetric(sample_seed, dim, 1.0)
                          : sample_semidefinite(sample_seed, dim,
                                                kind == SampleKind::positive ? Sign::positive : Sign::negative,
                                                1.0)
                                .matrix;
  const Vec v = sample_gaussian_vector(mix_seed(sample_seed, 1), dim);
  return {sample_seed, dim, kind, lemma1_evaluate(a, v)};
}

namespace {

struct Partial {
  DimSummary summary;
  std::size_t first_violation_index = static_cast<std::size_t>(-1);
};

void accumulate(Partial& p, const CampaignRecord& cr, std::size_t index) {
  const InequalityRecord& rec = cr.record;
  const double scaled = rec.residual_direct / rec.scale;
  const double disc = std::abs(rec.residual_direct - rec.residual_closed) / rec.scale;
  DimSummary& s = p.summary;
  if (s.count == 0) {
    s.min_scaled_residual = s.max_scaled_residual = scaled;
  } else {
    s.min_scaled_residual = std::min(s.min_scaled_residual, scaled);
    s.max_scaled_residual = std::max(s.max_scaled_residual, scaled);
  }
  s.max_scaled_discrepancy = std::max(s.max_scaled_discrepancy, disc);
  ++s.count;
  if (!sample_passes(rec, cr.dim, cr.kind)) {
    ++s.violations;
    if (index < p.first_violation_index) {
      p.first_violation_index = index;
      s.first_violation_seed = cr.seed;
    }
  }
}

void merge(Partial& into, const Partial& from) {
  if (from.summary.count == 0) return;
  DimSummary& s = into.summary;
  const DimSummary& f = from.summary;
  if (s.count == 0) {
    s.min_scaled_residual = f.min_scaled_residual;
    s.max_scaled_residual = f.max_scaled_residual;
  } else {
    s.min_scaled_residual = std::min(s.min_scaled_residual, f.min_scaled_residual);
    s.max_scaled_residual = std::max(s.max_scaled_residual, f.max_scaled_residual);
  }
  s.max_scaled_discrepancy = std::max(s.max_scaled_discrepancy, f.max_scaled_discrepancy);
  s.count += f.count;
  s.violations += f.violations;
  if (from.first_violation_index < into.first_violation_index) {
    into.first_violation_index = from.first_violation_index;
    s.first_violation_seed = f.first_violation_seed;
  }
}

}  // namespace

CampaignReport run_inequality_campaign(std::uint64_t seed, std::span<const int> dims, std::size_t count,
                                       SampleKind kind, bool keep_records, unsigned threads) {
  if (count == 0) throw InputError("campaign count must be at least 1");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  CampaignReport report;
  report.kind = kind;
  report.seed = seed;
  for (int dim : dims) {
    if (dim < 2 || dim > kMaxDim) throw InputError("campaign dimension outside [2, 8]");
    std::vector<Partial> partials(threads);
    std::vector<CampaignRecord> records(keep_records ? count : 0);
    auto work = [&](unsigned shard) {
      const std::size_t begin = count * shard / threads;
      const std::size_t end = count * (shard + 1) / threads;
      Partial& p = partials[shard];
      p.summary.dim = dim;
      for (std::size_t i = begin; i < end; ++i) {
        CampaignRecord cr = draw_inequality_sample(seed, dim, i, kind);
        accumulate(p, cr, i);
        if (keep_records) records[i] = cr;
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    Partial total;
    total.summary.dim = dim;
    for (const Partial& p : partials) merge(total, p);
    report.dims.push_back(total.summary);
    for (auto& r : records) report.records.push_back(r);
  }
  return report;
}

bool Lemma2CampaignReport::passed() const {
  return max_factorization_error <= 1e-8 && max_bridge_error <= 1e-8 &&
         max_scaled_m_direct_semidefinite <= 1e-9 && max_scaled_oriented_bracket <= 1e-9 &&
         max_expansion_ratio <= 1e-8 && max_m30_discrepancy <= 1e-8;
}

Lemma2CampaignReport run_lemma2_campaign(std::uint64_t seed, std::span<const int> dims,
                                         std::size_t tuples, std::size_t expansion_tuples) {
  if (dims.empty()) throw InputError("transported-form campaign needs at least one dimension");
  Lemma2CampaignReport rep;
  rep.tuples = tuples;
  auto fail = [&](std::uint64_t s) {
    if (!rep.first_failure_seed) rep.first_failure_seed = s;
  };

  for (std::size_t i = 0; i < tuples; ++i) {
    const int dim = dims[i % dims.size()];
    const std::uint64_t s = mix_seed(seed, i);
    std::mt19937_64 rng(s);
    std::uniform_real_distribution<double> magnitude(0.2, 2.0);
    std::uniform_real_distribution<double> second(-2.0, 2.0);
    const int mode = static_cast<int>(i % 4);
    const double u_prime = (mode % 2 == 0 ? 1.0 : -1.0) * magnitude(rng);
    const double u_second = second(rng);
    const Vec v = sample_gaussian_vector(mix_seed(s, 1), dim);
    const bool semidefinite = mode < 2;

    SymmetricMatrix hess_u(dim);
    if (semidefinite) {
      hess_u = sample_semidefinite(mix_seed(s, 2), dim, Sign::positive, 1.0).matrix;
    } else {
      const SymmetricMatrix a_u = sample_symmetric(mix_seed(s, 2), dim, 1.0);
      hess_u = u_prime * a_u + u_second * SymmetricMatrix::outer(v);
    }
    const TransformEval tr = TransformEval::from_derivatives(-1.0, u_prime, u_second);
    if (u_prime < 0.0) ++rep.decreasing_tuples;

    const Lemma2Result res = lemma2_evaluate(hess_u, v, tr);
    const double fact_err = std::abs(res.m_direct - res.m_factored) / res.scale;
    rep.max_factorization_error = std::max(rep.max_factorization_error, fact_err);
    if (fact_err > 1e-8) fail(s);

    const InequalityRecord rec = lemma1_evaluate(hess_u, v);
    const double bridge = std::abs(res.m_direct + rec.residual_closed) / std::max(res.scale, rec.scale);
    rep.max_bridge_error = std::max(rep.max_bridge_error, bridge);
    if (bridge > 1e-8) fail(s);

    const SymmetricMatrix a_u = (1.0 / u_prime) * (hess_u - u_second * SymmetricMatrix::outer(v));
    if (semidefinite) {
      ++rep.semidefinite_tuples;
      const double m_scaled = res.m_direct / res.scale;
      const double fa = a_u.frobenius_norm();
      const double bracket_scale = 1.0 + fa * fa * fa * norm_squared(v);
      const double oriented = (u_prime > 0.0 ? 1.0 : -1.0) * transported_form(a_u, v) / bracket_scale;
      rep.max_scaled_m_direct_semidefinite = std::max(rep.max_scaled_m_direct_semidefinite, m_scaled);
      rep.max_scaled_oriented_bracket = std::max(rep.max_scaled_oriented_bracket, oriented);
      if (m_scaled > 1e-9 || oriented > 1e-9) fail(s);
    }

    if (i < expansion_tuples) {
      ++rep.expansion_tuples;
      const ExpansionCoeffs c = expansion_coefficients(a_u, v);
      const double denom = std::max(1.0, std::abs(c.m30));
      const double ratio = std::max({std::abs(c.m21), std::abs(c.m12), std::abs(c.m03)}) / denom;
      rep.max_expansion_ratio = std::max(rep.max_expansion_ratio, ratio);
      rep.max_m30_discrepancy = std::max(rep.max_m30_discrepancy, std::abs(c.m30 - c.m30_direct) / denom);
      if (!c.vanishing_holds(1e-8)) fail(s);
    }
  }
  return rep;
}

}  // namespace s2kit
