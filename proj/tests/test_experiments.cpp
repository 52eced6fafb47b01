#include <sstream>

#include <gtest/gtest.h>

#include "gtx/errors.hpp"
#include "gtx/experiments.hpp"

using namespace gtx;

namespace {

TrialConfig basic(SchedulerKind kind, double p) {
  TrialConfig c;
  c.n = 12;
  c.m = 8;
  c.p = p;
  c.trials = 5;
  c.base_seed = 42;
  c.scheduler = kind;
  c.group_size = 4;
  return c;
}

std::string csv(const std::vector<TrialReport>& r) {
  std::ostringstream out;
  write_trials_csv(out, r);
  return out.str();
}

}  // namespace

TEST(RunTrials, EveryoneHoldsEverythingAtPOne) {
  for (auto kind : {SchedulerKind::PadTreeSplit, SchedulerKind::PartitionTreeSplit, SchedulerKind::Greedy}) {
    auto c = basic(kind, 1.0);
    c.trials = 1;
    c.target = Target::Complete;
    const auto r = run_trials(c);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].satisfied_fraction, 1.0);
  }
  auto oracle = basic(SchedulerKind::Oracle, 1.0);
  oracle.n = 4;
  oracle.m = 4;
  oracle.trials = 1;
  EXPECT_EQ(run_trials(oracle)[0].satisfied_fraction, 1.0);
}

TEST(RunTrials, NothingToShareAtPZero) {
  auto c = basic(SchedulerKind::PadTreeSplit, 0.0);
  c.trials = 1;
  EXPECT_EQ(run_trials(c)[0].satisfied_fraction, 1.0);
  EXPECT_FALSE(run_trials(c)[0].failure_kind.has_value());
  c.target = Target::Complete;
  EXPECT_EQ(run_trials(c)[0].satisfied_fraction, 0.0);
}

TEST(RunTrials, Deterministic) {
  for (auto kind : {SchedulerKind::PadTreeSplit, SchedulerKind::PartitionTreeSplit, SchedulerKind::Greedy}) {
    const auto c = basic(kind, 0.3);
    EXPECT_EQ(csv(run_trials(c)), csv(run_trials(c)));
  }
  auto a = basic(SchedulerKind::Greedy, 0.3), b = a;
  b.base_seed = 43;
  EXPECT_NE(csv(run_trials(a)), csv(run_trials(b)));
}

TEST(RunTrials, ReportFields) {
  const auto c = basic(SchedulerKind::PartitionTreeSplit, 0.3);
  const auto r = run_trials(c);
  ASSERT_EQ(r.size(), 5u);
  for (std::size_t k = 0; k < r.size(); ++k) {
    EXPECT_EQ(r[k].trial, k);
    EXPECT_EQ(r[k].seed, derive_seed(42, k));
    EXPECT_DOUBLE_EQ(r[k].satisfied_fraction, r[k].satisfied_count / 8.0);
  }
}

TEST(RunTrials, Validation) {
  auto c = basic(SchedulerKind::Greedy, 0.3);
  c.trials = 0;
  EXPECT_THROW(run_trials(c), std::invalid_argument);
  c = basic(SchedulerKind::PartitionTreeSplit, 0.3);
  c.group_size.reset();
  EXPECT_THROW(run_trials(c), std::invalid_argument);
  c = basic(SchedulerKind::Oracle, 0.3);
  EXPECT_THROW(run_trials(c), std::invalid_argument);
  c = basic(SchedulerKind::Greedy, 1.3);
  EXPECT_THROW(run_trials(c), std::invalid_argument);
  c = basic(SchedulerKind::PartitionTreeSplit, 0.3);
  c.group_size.reset();
  c.regime = RegimeSpec{LinearRegime{1.0, 2.0, 2.0}};
  EXPECT_THROW(run_trials(c), EmptyWindow);
}

TEST(RunTrials, RegimeSetsUsersAndProbability) {
  TrialConfig c;
  c.n = 256;
  c.regime = linear_aposteriori(256, 0.25, 4, 0.5);
  c.scheduler = SchedulerKind::PartitionTreeSplit;
  c.target = Target::Complete;
  c.trials = 2;
  const auto params = resolve(c);
  EXPECT_EQ(params.m, 64u);
  EXPECT_NEAR(params.p, 1.0 - pick_q(*c.regime), 1e-15);
  ASSERT_TRUE(params.plan.has_value());
  EXPECT_EQ(params.plan->group_size, 5u);
  EXPECT_EQ(params.plan->subset_size, 4u);
  EXPECT_EQ(run_trials(c).size(), 2u);
}

TEST(Csv, TrialColumnsAreStable) {
  auto c = basic(SchedulerKind::Greedy, 0.3);
  c.trials = 1;
  const auto text = csv(run_trials(c));
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "trial,seed,n,m,p,satisfied_count,satisfied_fraction,failure_kind,failed_groups,schedule_length");
  std::ostringstream timed;
  write_trials_csv(timed, run_trials(c), true);
  EXPECT_NE(timed.str().find("wall_time_seconds"), std::string::npos);
}

TEST(Sweep, MonotoneGridSearchFindsThreshold) {
  std::vector<std::size_t> grid;
  for (std::size_t n = 2; n <= 200; ++n) grid.push_back(n);
  const auto r = sweep_thresholds(0.2, 16, 0.05, 200, grid, 1);
  ASSERT_TRUE(r.min_n.has_value());
  // The reported n qualifies and the grid point just below it does not.
  const SweepPoint at = evaluate_sweep_point(0.2, 16, *r.min_n, 200, 0.05, 1);
  EXPECT_TRUE(at.qualifies);
  const SweepPoint below = evaluate_sweep_point(0.2, 16, *r.min_n - 1, 200, 0.05, 1);
  EXPECT_FALSE(below.qualifies);
  for (std::size_t k = 1; k < r.evaluated.size(); ++k) EXPECT_LT(r.evaluated[k - 1].n, r.evaluated[k].n);
}

TEST(Sweep, FullPickupNeverQualifies) {
  const std::vector<std::size_t> grid{2, 4, 8, 16};
  EXPECT_THROW(sweep_min_n(1.0, 8, 0.01, 50, grid, 0), NotFound);
  const auto r = sweep_thresholds(1.0, 8, 0.01, 50, grid, 0);
  EXPECT_FALSE(r.min_n.has_value());
  for (const auto& pt : r.evaluated) EXPECT_EQ(pt.existence_errors, pt.trials);
}

TEST(Sweep, FullPickupIsFineWhenEqualHalvesCount) {
  const std::vector<std::size_t> grid{2, 4, 8, 16};
  EXPECT_EQ(sweep_min_n(1.0, 8, 0.01, 50, grid, 0, SplitRule::AllowEqual), 2u);
}

TEST(Sweep, Validation) {
  const std::vector<std::size_t> grid{2, 4};
  const std::vector<std::size_t> unsorted{4, 2};
  EXPECT_THROW(sweep_thresholds(0.1, 8, 0.0, 10, grid, 0), std::invalid_argument);
  EXPECT_THROW(sweep_thresholds(0.1, 8, 0.01, 10, unsorted, 0), std::invalid_argument);
  EXPECT_THROW(sweep_thresholds(0.1, 12, 0.01, 10, grid, 0), std::invalid_argument);
}

TEST(Sweep, LargerPickupNeedsFewerFiles) {
  std::vector<std::size_t> grid;
  for (std::size_t n = 2; n <= 400; ++n) grid.push_back(n);
  const auto low = sweep_min_n(0.1, 128, 0.01, 300, grid, 7);
  const auto high = sweep_min_n(0.2, 128, 0.01, 300, grid, 7);
  EXPECT_LE(high, low);
}

TEST(Formulas, IdsRoundTrip) {
  for (auto f : all_formulas()) EXPECT_EQ(parse_formula(formula_id(f)), f);
  EXPECT_FALSE(parse_formula("nope").has_value());
}

TEST(Formulas, BoundsCsv) {
  FormulaParams prm;
  prm.n = 3;
  prm.m = 2;
  prm.p = 0.5;
  const std::vector<BoundRow> rows{evaluate_formula(Formula::FileCoverMissExact, prm)};
  std::ostringstream out;
  write_bounds_csv(out, rows);
  EXPECT_EQ(out.str(),
            "formula_id,n,m,d,p,q,w,v,z,raw_value,clamped_value,is_upper_bound\n"
            "file_cover_miss_exact,3,2,,0.5,0.5,,,,0.578125,0.578125,0\n");
}

TEST(Verify, WorkedPoints) {
  FormulaParams cover;
  cover.n = 3;
  cover.m = 2;
  cover.p = 0.5;
  const auto c = verify_point({Formula::FileCoverMissExact, cover, 10000}, 5);
  EXPECT_TRUE(c.pass);
  EXPECT_NEAR(c.mc_estimate, 0.578125, 0.02);

  FormulaParams split;
  split.n = 1;
  split.d = 2;
  split.p = 0.5;
  const auto s = verify_point({Formula::SplitViolation, split, 10000}, 5);
  EXPECT_EQ(s.mc_estimate, 1.0);
  EXPECT_TRUE(s.pass);

  FormulaParams none;
  none.n = 10;
  none.d = 4;
  none.p = 0.0;
  const auto z = verify_point({Formula::NoValidDivision, none, 1000}, 5);
  EXPECT_EQ(z.mc_estimate, 1.0);
  EXPECT_EQ(z.closed_form, 1.0L);
  EXPECT_TRUE(z.pass);
}

TEST(Verify, DefaultGridIsLargeEnough) {
  const auto grid = default_verification_grid();
  EXPECT_GE(grid.size(), 50u);
  for (const auto& pt : grid) EXPECT_EQ(pt.samples, 10000u);
}
