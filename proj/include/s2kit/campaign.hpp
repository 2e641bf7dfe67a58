#pragma once

// Seeded sampling campaigns over the matrix inequality and the transported
// form. Samples are independent given (campaign seed, dim, index); work is
// sharded across threads and merged in index order so reports are reproducible.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "s2kit/matineq.hpp"

namespace s2kit {

enum class SampleKind { positive, negative, indefinite };

std::string to_string(SampleKind kind);
SampleKind parse_sample_kind(const std::string& text);

struct CampaignRecord {
  std::uint64_t seed = 0;
  int dim = 0;
  SampleKind kind = SampleKind::positive;
  InequalityRecord record;
};

struct DimSummary {
  int dim = 0;
  std::size_t count = 0;
  double min_scaled_residual = 0.0;  ///< min residual_direct / scale
  double max_scaled_residual = 0.0;  ///< max residual_direct / scale
  double max_scaled_discrepancy = 0.0;  ///< max |direct - closed| / scale
  std::size_t violations = 0;
  std::optional<std::uint64_t> first_violation_seed;
};

struct CampaignReport {
  SampleKind kind = SampleKind::positive;
  std::uint64_t seed = 0;
  std::vector<DimSummary> dims;
  std::vector<CampaignRecord> records;  ///< filled only when requested

  bool passed() const;
};

/// Tolerances applied per sample. Semidefinite kinds assert the sign of the
/// residual at 1e-9 * scale; indefinite samples assert nothing about the sign
/// except in dimension <= 3, where the residual vanishes identically
/// (|residual| <= 1e-10 * scale). Every sample asserts closed-form agreement
/// at 1e-9 * scale.
bool sample_passes(const InequalityRecord& rec, int dim, SampleKind kind);

/// Draw the index-th sample of a campaign.
CampaignRecord draw_inequality_sample(std::uint64_t seed, int dim, std::size_t index, SampleKind kind);

CampaignReport run_inequality_campaign(std::uint64_t seed, std::span<const int> dims, std::size_t count,
                                       SampleKind kind, bool keep_records = false,
                                       unsigned threads = 0);

struct Lemma2CampaignReport {
  std::size_t tuples = 0;
  double max_factorization_error = 0.0;  ///< max |M_direct - M_factored| / scale
  double max_bridge_error = 0.0;  ///< max |M_direct + residual_closed(hessU, grad u)| / scale
  std::size_t semidefinite_tuples = 0;
  double max_scaled_m_direct_semidefinite = 0.0;  ///< max M_direct / scale over PSD hessU
  double max_scaled_oriented_bracket = 0.0;  ///< max sign(U') * bracket / scale over PSD hessU
  std::size_t decreasing_tuples = 0;
  std::size_t expansion_tuples = 0;
  double max_expansion_ratio = 0.0;  ///< max |m21|,|m12|,|m03| / max(1,|m30|)
  double max_m30_discrepancy = 0.0;  ///< max |m30 - m30_direct| / max(1,|m30|)
  std::optional<std::uint64_t> first_failure_seed;

  bool passed() const;
};

/// Factorization and sign checks on `tuples` seeded (A_u, grad u, U', U'')
/// tuples, half of them with a positive semidefinite hessU and a quarter with
/// U' < 0; expansion coefficients on the first `expansion_tuples` of them.
Lemma2CampaignReport run_lemma2_campaign(std::uint64_t seed, std::span<const int> dims,
                                         std::size_t tuples, std::size_t expansion_tuples);

}  // namespace s2kit
