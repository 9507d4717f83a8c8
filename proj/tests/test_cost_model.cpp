#include <cmath>
#include <gtest/gtest.h>

#include "qsp/cost_model.hpp"
#include "qsp/errors.hpp"

using namespace qsp;

TEST(LrspEstimate, FourQubitFullRankIsNine) {
  const auto e = lrsp_estimate(4, 2);
  EXPECT_EQ(e.total, 9.0);
  EXPECT_EQ(e.total_x96, 9 * 96);
  EXPECT_EQ(e.regime, CostRegime::UniEven);
  EXPECT_EQ(e.k, 2);
}

TEST(LrspEstimate, TwoQubitRankOne) {
  const auto e = lrsp_estimate(2, 0);
  EXPECT_EQ(e.phase1, 0.0);
  EXPECT_EQ(e.phase2, 0.0);
  EXPECT_EQ(e.regime, CostRegime::IsoEven);
}

TEST(LrspEstimate, FractionalTermsKept) {
  const auto e = lrsp_estimate(4, 1);
  EXPECT_NEAR(e.total, 1 + 2 * (8.0 - 4.0 / 24.0), 1e-12);
  EXPECT_EQ(e.total_x96, 96 + 2 * (8 * 96 - 16));
  EXPECT_EQ(lrsp_estimate(6, 3).total, 47.0);
  EXPECT_EQ(lrsp_estimate(5, 2).regime, CostRegime::UniOdd);
  EXPECT_EQ(lrsp_estimate(5, 1).regime, CostRegime::IsoOdd);
}

TEST(LrspEstimate, RejectsOutOfRange) {
  EXPECT_THROW(lrsp_estimate(4, 3), InvalidInput);
  EXPECT_THROW(lrsp_estimate(1, 0), InvalidInput);
  EXPECT_THROW(lrsp_estimate(4, -1), InvalidInput);
  EXPECT_THROW(table1_bound(5, 3), InvalidInput);
}

TEST(Table1Bound, Values) {
  EXPECT_NEAR(table1_bound(4, 2), 46.0 / 3.0, 1e-12);
  EXPECT_NEAR(table1_bound(4, 0), 23.0 / 3.0, 1e-12);
  EXPECT_NEAR(table1_bound(5, 2), 115.0 / 96.0 * 32.0, 1e-12);
  EXPECT_NEAR(table1_bound(5, 1), 3.0 * 4.0 * (2.0 - 1.0 / 24.0), 1e-12);
}

TEST(CostModelProperties, ExactIdentitiesUpToTwenty) {
  for (int n = 2; n <= 20; ++n) {
    const int k = n / 2;
    for (int m = 0; m <= k; ++m) {
      const auto est = lrsp_estimate(n, m);
      const auto bound = table1_bound_x96(n, m);
      EXPECT_EQ(est.total_x96, std::llround(est.total * 96));
      if (m < k) {
        EXPECT_EQ(est.total_x96 - bound, 96 * ((std::int64_t{1} << m) - 1)) << "n=" << n << " m=" << m;
      } else if (n % 2 == 0) {
        EXPECT_EQ(bound - est.total_x96, 96 * (std::int64_t{1} << (k + 1)) - 160) << "n=" << n;
        EXPECT_LE(est.total, table1_bound(n, m));
      }
    }
  }
}

TEST(CostModelProperties, EstimateIncreasesWithMInIsometryRegime) {
  for (int n = 2; n <= 20; ++n) {
    for (int m = 1; m < n / 2; ++m) EXPECT_GT(lrsp_estimate(n, m).total, lrsp_estimate(n, m - 1).total);
  }
}

TEST(BipartitionCount, Values) {
  EXPECT_EQ(bipartition_count(2), 2);
  EXPECT_EQ(bipartition_count(3), 3);
  EXPECT_EQ(bipartition_count(4), 10);
  EXPECT_EQ(bipartition_count(5), 15);
  EXPECT_THROW(bipartition_count(1), InvalidInput);
}

TEST(BaselineCount, Values) {
  EXPECT_EQ(baseline_sp_count(3), 4);
  EXPECT_EQ(baseline_sp_count(5), 26);
  EXPECT_EQ(baseline_sp_count(1), 0);
}
