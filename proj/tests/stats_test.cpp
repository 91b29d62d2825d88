#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bitretrieve/core_types.hpp"
#include "bitretrieve/stats.hpp"

namespace bitretrieve::stats {
namespace {

// Reference values from scipy.stats.

TEST(Stats, Summary) {
  const auto s = summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.variance, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.standard_error, std::sqrt(5.0 / 12.0));
  EXPECT_THROW(summarize({1.0}), InvalidInput);
}

TEST(Stats, Median) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
  EXPECT_THROW(median({}), InvalidInput);
}

TEST(Stats, BetaCdf) {
  EXPECT_NEAR(beta_cdf(4, 4, 0.3), 0.126036, 1e-12);
  EXPECT_EQ(beta_cdf(2, 3, -1.0), 0.0);
  EXPECT_EQ(beta_cdf(2, 3, 1.5), 1.0);
}

TEST(Stats, ChiSquaredPvalue) {
  EXPECT_NEAR(chi_squared_pvalue(12.5, 7), 0.08526927515826925, 1e-12);
  EXPECT_EQ(chi_squared_pvalue(0.0, 3), 1.0);
}

TEST(Stats, KolmogorovSmirnov) {
  EXPECT_NEAR(ks_statistic({0.1, 0.35, 0.5, 0.8, 0.95}, [](double x) { return x; }), 0.2, 1e-15);
  EXPECT_NEAR(ks_two_sample({0.1, 0.4, 0.7, 0.9}, {0.2, 0.3, 0.5}), 0.5, 1e-15);
}

TEST(Stats, Slope) {
  EXPECT_NEAR(ls_slope({0, 1, 2, 3}, {1, 3, 5, 7}), 2.0, 1e-15);
  EXPECT_THROW(ls_slope({1, 1}, {0, 1}), InvalidInput);
}

TEST(Stats, ProportionSe) { EXPECT_DOUBLE_EQ(proportion_se(0.5, 100), 0.05); }

}  // namespace
}  // namespace bitretrieve::stats
