#include <gtest/gtest.h>

#include <vector>

#include "s2kit/campaign.hpp"
#include "s2kit/error.hpp"

using namespace s2kit;

TEST(Campaign, SampleKindNames) {
  for (SampleKind k : {SampleKind::positive, SampleKind::negative, SampleKind::indefinite})
    EXPECT_EQ(parse_sample_kind(to_string(k)), k);
  EXPECT_THROW(parse_sample_kind("sideways"), InputError);
}

TEST(Campaign, PositiveAndNegativePass) {
  const std::vector<int> dims{2, 3, 4, 5, 6, 7, 8};
  EXPECT_TRUE(run_inequality_campaign(1, dims, 500, SampleKind::positive).passed());
  EXPECT_TRUE(run_inequality_campaign(2, dims, 500, SampleKind::negative).passed());
}

TEST(Campaign, IndefiniteThreeVanishes) {
  const std::vector<int> dims{3};
  const CampaignReport rep = run_inequality_campaign(3, dims, 1000, SampleKind::indefinite);
  ASSERT_EQ(rep.dims.size(), 1u);
  EXPECT_LE(rep.dims[0].max_scaled_residual, 1e-10);
  EXPECT_GE(rep.dims[0].min_scaled_residual, -1e-10);
}

TEST(Campaign, ThreadCountDoesNotChangeRecords) {
  const std::vector<int> dims{4, 6};
  const CampaignReport a = run_inequality_campaign(77, dims, 300, SampleKind::positive, true, 1);
  const CampaignReport b = run_inequality_campaign(77, dims, 300, SampleKind::positive, true, 7);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].seed, b.records[i].seed);
    EXPECT_EQ(a.records[i].record.residual_direct, b.records[i].record.residual_direct);
  }
  for (std::size_t d = 0; d < a.dims.size(); ++d) {
    EXPECT_EQ(a.dims[d].min_scaled_residual, b.dims[d].min_scaled_residual);
    EXPECT_EQ(a.dims[d].max_scaled_discrepancy, b.dims[d].max_scaled_discrepancy);
  }
}

TEST(Campaign, DrawIsReproducible) {
  const CampaignRecord a = draw_inequality_sample(5, 4, 17, SampleKind::negative);
  const CampaignRecord b = draw_inequality_sample(5, 4, 17, SampleKind::negative);
  EXPECT_EQ(a.seed, b.seed);
  EXPECT_EQ(a.record.lhs, b.record.lhs);
  EXPECT_EQ(a.record.rhs, b.record.rhs);
}

TEST(Campaign, SamplePassesFlagsWrongSign) {
  InequalityRecord r;
  r.scale = 1.0;
  r.residual_direct = r.residual_closed = -1.0;
  EXPECT_FALSE(sample_passes(r, 4, SampleKind::positive));
  EXPECT_TRUE(sample_passes(r, 4, SampleKind::negative));
  EXPECT_TRUE(sample_passes(r, 4, SampleKind::indefinite));
  EXPECT_FALSE(sample_passes(r, 3, SampleKind::indefinite));
}

TEST(TransportedCampaign, Passes) {
  const std::vector<int> dims{2, 3, 4, 5};
  const Lemma2CampaignReport rep = run_lemma2_campaign(9, dims, 1000, 100);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.tuples, 1000u);
  EXPECT_GT(rep.decreasing_tuples, 0u);
  EXPECT_LE(rep.max_factorization_error, 1e-8);
}
