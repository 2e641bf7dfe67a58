#include <gtest/gtest.h>

#include <cmath>

#include "s2kit/error.hpp"
#include "s2kit/source.hpp"

using namespace s2kit;

TEST(SourceTerm, Values) {
  EXPECT_DOUBLE_EQ(SourceTerm::constant(2.0)(-0.3), 2.0);
  EXPECT_DOUBLE_EQ(SourceTerm::eigen(3.0)(-0.5), 0.75);
  EXPECT_DOUBLE_EQ(SourceTerm::power(2.0, 1.5)(-4.0), 16.0);
  EXPECT_DOUBLE_EQ(SourceTerm::exp_decreasing(1.0)(-1.0), std::exp(1.0));
  EXPECT_DOUBLE_EQ(SourceTerm::exp_increasing(2.0)(-1.0), std::exp(-2.0));
  EXPECT_DOUBLE_EQ(SourceTerm::power(1.0, 1.0)(0.0), 0.0);
}

TEST(SourceTerm, DerivativeMatchesDifferences) {
  for (const char* text : {"const:1", "eigen:2", "power:1,0.5", "power:1.5,1.5", "expdec:1", "expinc:0.5"}) {
    const SourceTerm f = SourceTerm::parse(text);
    for (double t : {-1.3, -0.4, -0.05}) {
      const double e = 1e-6;
      EXPECT_NEAR(f.derivative(t), (f(t + e) - f(t - e)) / (2 * e), 1e-6 * std::max(1.0, std::abs(f.derivative(t))))
          << text;
    }
  }
}

TEST(SourceTerm, Monotonicity) {
  EXPECT_EQ(SourceTerm::constant(1).monotonicity(), SourceTerm::Monotonicity::constant);
  EXPECT_TRUE(SourceTerm::constant(1).nonincreasing());
  EXPECT_TRUE(SourceTerm::constant(1).nondecreasing());
  EXPECT_TRUE(SourceTerm::eigen(1).nonincreasing());
  EXPECT_FALSE(SourceTerm::eigen(1).nondecreasing());
  EXPECT_TRUE(SourceTerm::power(1, 1).nonincreasing());
  EXPECT_TRUE(SourceTerm::exp_decreasing().nonincreasing());
  EXPECT_FALSE(SourceTerm::exp_decreasing().nondecreasing());
  EXPECT_TRUE(SourceTerm::exp_increasing().nondecreasing());
  EXPECT_FALSE(SourceTerm::exp_increasing().nonincreasing());
}

TEST(SourceTerm, ParseDescribeRoundTrip) {
  for (const char* text : {"const:1", "const:2.5", "eigen:28.1", "power:1,0.5", "expdec:1", "expinc:3"}) {
    const SourceTerm f = SourceTerm::parse(text);
    const SourceTerm g = SourceTerm::parse(f.describe());
    EXPECT_EQ(f.describe(), g.describe());
    EXPECT_EQ(f(-0.7), g(-0.7));
  }
  EXPECT_DOUBLE_EQ(SourceTerm::parse("expdec")(-1.0), std::exp(1.0));
}

TEST(SourceTerm, Errors) {
  EXPECT_THROW(SourceTerm::parse("cubic:1"), InputError);
  EXPECT_THROW(SourceTerm::parse("const:x"), InputError);
  EXPECT_THROW(SourceTerm::parse("power:1"), InputError);
  EXPECT_THROW(SourceTerm::constant(0.0), SourceError);
  EXPECT_THROW(SourceTerm::power(1.0, -1.0), SourceError);
  EXPECT_THROW(SourceTerm::constant(1.0).scaled(-2.0), SourceError);
}

TEST(SourceTerm, Scaled) {
  const SourceTerm f = SourceTerm::exp_decreasing(1.0).scaled(4.0);
  EXPECT_DOUBLE_EQ(f(-1.0), 4.0 * std::exp(1.0));
  EXPECT_DOUBLE_EQ(f.derivative(-1.0), -4.0 * std::exp(1.0));
}
