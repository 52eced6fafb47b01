#include <cmath>

#include <gtest/gtest.h>

#include "gtx/acquisition.hpp"
#include "gtx/errors.hpp"

using namespace gtx;

TEST(Sampling, DegenerateProbabilities) {
  const auto full = sample_instance({40, 5, 1.0, 3});
  for (const auto& h : full.holdings()) EXPECT_EQ(h.size(), 40u);
  const auto none = sample_instance({40, 5, 0.0, 3});
  for (const auto& h : none.holdings()) EXPECT_TRUE(h.empty());
}

TEST(Sampling, RejectsBadProbability) {
  EXPECT_THROW(sample_instance({4, 2, 1.5, 0}), std::invalid_argument);
  EXPECT_THROW(sample_instance({4, 2, -0.1, 0}), std::invalid_argument);
}

TEST(Sampling, Reproducible) {
  EXPECT_EQ(sample_instance({100, 7, 0.3, 99}), sample_instance({100, 7, 0.3, 99}));
  EXPECT_NE(sample_instance({100, 7, 0.3, 99}), sample_instance({100, 7, 0.3, 100}));
}

TEST(Sampling, FewerFilesIsAPrefix) {
  const auto small = sample_instance({30, 9, 0.4, 5});
  const auto large = sample_instance({31, 9, 0.4, 5});
  for (UserId u = 0; u < 9; ++u) {
    for (FileId f = 0; f < 30; ++f) EXPECT_EQ(small.holding(u).contains(f), large.holding(u).contains(f));
  }
}

TEST(Sampling, BinomialCountWithinThreeSigma) {
  const double sigma = std::sqrt(1000 * 0.25);
  int inside = 0;
  const int seeds = 1000;
  for (int s = 0; s < seeds; ++s) {
    const auto inst = sample_instance({1000, 1, 0.5, derive_seed(11, s)});
    if (std::abs(static_cast<double>(inst.holding(0).size()) - 500.0) <= 3 * sigma) ++inside;
  }
  EXPECT_GE(inside, seeds * 99 / 100);
}

TEST(Sampling, InclusionFrequencyMatchesP) {
  const double p = 0.137;
  const auto inst = sample_instance({2000, 50, p, 17});
  std::size_t total = 0;
  for (const auto& h : inst.holdings()) total += h.size();
  const double cells = 2000.0 * 50.0;
  EXPECT_NEAR(total / cells, p, 4 * std::sqrt(p * (1 - p) / cells));
}

TEST(QWindow, LogRegime) {
  const auto w = q_window({LogRegime{1.0}});
  EXPECT_NEAR(w.lo, 0.1353352832366127, 1e-12);
  EXPECT_NEAR(w.hi, 0.36787944117144233, 1e-12);
  EXPECT_NEAR(pick_q({LogRegime{1.0}}), 0.22313016014842982, 1e-12);
  EXPECT_NEAR(pick_q({LogRegime{2.0}}), 0.4723665527410147, 1e-12);
}

TEST(QWindow, LinearWithEqualFactorsIsEmpty) {
  EXPECT_THROW(q_window({LinearRegime{1.0, 2.0, 2.0}}), EmptyWindow);
  EXPECT_THROW(pick_q({LinearRegime{1.0, 2.0, 2.0}}), EmptyWindow);
}

TEST(QWindow, EveryInteriorPointSatisfiesTheInequality) {
  const RegimeSpec lin{LinearRegime{1.0, 3.0, 2.0}};
  const auto w = q_window(lin);
  for (int k = 1; k < 20; ++k) {
    const double q = w.lo + (w.hi - w.lo) * k / 20.0;
    EXPECT_LT(-2.0 / 2.0, std::log(q));
    EXPECT_LT(std::log(q), -2.0 / 3.0);
  }
  const RegimeSpec poly{PolyRegime{1.0, 2.0, 4.0, 1.5}};
  const auto pw = q_window(poly);
  EXPECT_NEAR(std::log(pw.lo), -2.0 / 1.5, 1e-12);
  EXPECT_NEAR(std::log(pw.hi), -3.0 / 4.0, 1e-12);
}

TEST(QWindow, InvalidParameters) {
  EXPECT_THROW(q_window({LogRegime{0.0}}), std::invalid_argument);
  EXPECT_THROW(q_window({PolyRegime{1.0, 0.5, 2.0, 1.0}}), std::invalid_argument);
}

TEST(PowerOfTwo, StrictlyBelow) {
  EXPECT_EQ(power_of_two_below(12), 8u);
  EXPECT_EQ(power_of_two_below(8), 4u);
  EXPECT_EQ(power_of_two_below(2.5), 2u);
  EXPECT_EQ(power_of_two_below(1.5), 1u);
  EXPECT_THROW(power_of_two_below(1.0), std::invalid_argument);
  EXPECT_EQ(floor_power_of_two(8), 8u);
  EXPECT_EQ(floor_power_of_two(5), 4u);
  EXPECT_EQ(floor_power_of_two(1), 1u);
}

TEST(PartitionPlan, RoundsGroupAndSubset) {
  const double ln_n = std::log(1000.0);
  const RegimeSpec spec{LinearRegime{1.0, 10.0 / ln_n, 8.0 / ln_n}};
  const auto plan = plan_partition(spec, 1000);
  EXPECT_EQ(plan.group_size, 10u);
  EXPECT_EQ(plan.subset_size, 8u);
  EXPECT_THROW(plan_partition({LogRegime{1.0}}, 1000), std::invalid_argument);
}

TEST(PartitionPlan, APosterioriLinear) {
  const auto spec = linear_aposteriori(4096, 1.0, 16, 0.5);
  const auto plan = plan_partition(spec, 4096);
  EXPECT_EQ(plan.group_size, 17u);
  EXPECT_EQ(plan.subset_size, 16u);
  EXPECT_EQ(regime_user_count(spec, 4096), 4096u);
  const auto w = q_window(spec);
  const double q = pick_q(spec);
  EXPECT_GT(q, w.lo);
  EXPECT_LT(q, w.hi);
  EXPECT_THROW(linear_aposteriori(4096, 1.0, 12), std::invalid_argument);
}

TEST(RegimeUsers, Counts) {
  EXPECT_EQ(regime_user_count({LogRegime{2.0}}, 1000), 14u);
  EXPECT_EQ(regime_user_count({PolyRegime{0.5, 2.0, 1.0, 1.0}}, 10), 50u);
}
