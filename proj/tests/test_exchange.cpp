#include <gtest/gtest.h>

#include "gtx/errors.hpp"
#include "gtx/exchange.hpp"
#include "gtx/file_set.hpp"
#include "gtx/rng.hpp"
#include "test_util.hpp"

using namespace gtx;
using gtx::test::make_instance;

TEST(FileSet, BasicAlgebra) {
  FileSet a(130, {0, 64, 129});
  FileSet b(130, {64, 100});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.contains(129));
  EXPECT_FALSE(a.contains(100));
  EXPECT_EQ((a | b).members(), (std::vector<FileId>{0, 64, 100, 129}));
  EXPECT_EQ((a & b).members(), (std::vector<FileId>{64}));
  FileSet c = a;
  c.subtract(b);
  EXPECT_EQ(c.members(), (std::vector<FileId>{0, 129}));
  EXPECT_TRUE((a & b).is_subset_of(a));
  EXPECT_FALSE(a.is_subset_of(b));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_EQ(FileSet::full(70).size(), 70u);
  c.clear();
  EXPECT_TRUE(c.empty());
}

TEST(FileSet, ForEachVisitsMembersInOrder) {
  FileSet a(200, {3, 63, 64, 199});
  std::vector<FileId> seen;
  a.for_each([&](FileId f) { seen.push_back(f); });
  EXPECT_EQ(seen, a.members());
}

TEST(FileSet, RejectsMismatchAndRange) {
  FileSet a(4), b(5);
  EXPECT_THROW(a |= b, std::invalid_argument);
  EXPECT_THROW(gt_satisfied(a, b), std::invalid_argument);
  EXPECT_THROW(a.insert(4), std::invalid_argument);
  EXPECT_THROW(FileSet(3, {3}), std::invalid_argument);
}

TEST(GtCriterion, Examples) {
  EXPECT_TRUE(gt_satisfied(FileSet(4, {1, 2}), FileSet(4, {2, 3})));
  EXPECT_FALSE(gt_satisfied(FileSet(4, {1}), FileSet(4, {1, 2})));
  EXPECT_FALSE(gt_satisfied(FileSet(4, {1, 2}), FileSet(4, {1, 2})));
  EXPECT_FALSE(gt_satisfied(FileSet(4), FileSet(4)));
}

TEST(Exchange, UnionSemantics) {
  auto s = exchange(make_instance(3, {{1}, {2}}), {0, 1});
  EXPECT_EQ(s.holding(0).members(), (std::vector<FileId>{1, 2}));
  EXPECT_EQ(s.holding(1).members(), (std::vector<FileId>{1, 2}));

  auto t = exchange(make_instance(10, {{1, 2}, {2, 3}, {9}}), {0, 1});
  EXPECT_EQ(t.holding(0).members(), (std::vector<FileId>{1, 2, 3}));
  EXPECT_EQ(t.holding(1).members(), (std::vector<FileId>{1, 2, 3}));
  EXPECT_EQ(t.holding(2).members(), (std::vector<FileId>{9}));
}

TEST(Exchange, SubsetPairIsRejected) {
  EXPECT_THROW(exchange(make_instance(3, {{1}, {1, 2}}), {0, 1}), GtViolation);
}

TEST(Exchange, BadIndicesAreContractViolations) {
  auto s = make_instance(3, {{1}, {2}});
  EXPECT_THROW(exchange(s, {0, 0}), std::invalid_argument);
  EXPECT_THROW(exchange(s, {0, 2}), std::invalid_argument);
}

TEST(ApplySchedule, Replay) {
  auto s = apply_schedule(make_instance(4, {{1}, {2}, {3}}), {{0, 1}, {0, 2}});
  EXPECT_EQ(s.holding(0).members(), (std::vector<FileId>{1, 2, 3}));
  EXPECT_EQ(s.holding(1).members(), (std::vector<FileId>{1, 2}));
  EXPECT_EQ(s.holding(2).members(), (std::vector<FileId>{1, 2, 3}));
}

TEST(ApplySchedule, EmptyScheduleIsIdentity) {
  auto s = make_instance(4, {{1}, {2, 3}});
  EXPECT_EQ(apply_schedule(s, {}), s);
}

TEST(ApplySchedule, ReportsFailingStep) {
  try {
    apply_schedule(make_instance(3, {{1}, {2}}), {{0, 1}, {0, 1}});
    FAIL() << "expected GtViolation";
  } catch (const GtViolation& e) {
    ASSERT_TRUE(e.step().has_value());
    EXPECT_EQ(*e.step(), 1u);
    EXPECT_EQ(e.first(), 0u);
    EXPECT_EQ(e.second(), 1u);
  }
}

TEST(Universe, Examples) {
  EXPECT_EQ(achievable_universe(make_instance(4, {{1}, {2}, {3}})).members(), (std::vector<FileId>{1, 2, 3}));
  EXPECT_TRUE(achievable_universe(make_instance(4, {{}, {}})).empty());
  EXPECT_EQ(achievable_universe(make_instance(4, {{1, 2}, {2}})).members(), (std::vector<FileId>{1, 2}));
}

TEST(SatisfiedCount, Examples) {
  auto s = make_instance(4, {{1, 2, 3}, {1, 2}, {1, 2, 3}});
  EXPECT_EQ(satisfied_count(s, FileSet(4, {1, 2, 3})), 2u);
  EXPECT_EQ(satisfied_count(s, FileSet(4)), 3u);
  EXPECT_EQ(satisfied_count(make_instance(3, {{1}, {2}}), FileSet(3, {1, 2})), 0u);
  EXPECT_EQ(satisfied_users(s, FileSet(4, {1, 2, 3})), (std::vector<UserId>{0, 2}));
}

TEST(TargetSet, AchievableVersusComplete) {
  auto s = make_instance(5, {{1}, {3}});
  EXPECT_EQ(target_set(s, Target::Achievable).members(), (std::vector<FileId>{1, 3}));
  EXPECT_EQ(target_set(s, Target::Complete).size(), 5u);
}

TEST(ExchangeProperties, RandomWalksKeepInvariants) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(12), m = 2 + rng.below(8);
    std::vector<FileSet> holdings;
    for (std::size_t u = 0; u < m; ++u) {
      FileSet h(n);
      for (std::size_t f = 0; f < n; ++f)
        if (rng.below(3) == 0) h.insert(f);
      holdings.push_back(std::move(h));
    }
    Instance s(n, std::move(holdings));
    const FileSet universe = achievable_universe(s);
    std::size_t satisfied = satisfied_count(s, universe);
    for (int step = 0; step < 40; ++step) {
      const UserId i = rng.below(m), j = rng.below(m);
      if (i == j || !gt_satisfied(s.holding(i), s.holding(j))) continue;
      const FileSet before_i = s.holding(i), before_j = s.holding(j);
      s.exchange_in_place({i, j});
      EXPECT_TRUE(before_i.is_subset_of(s.holding(i)) && !(before_i == s.holding(i)));
      EXPECT_TRUE(before_j.is_subset_of(s.holding(j)) && !(before_j == s.holding(j)));
      EXPECT_FALSE(gt_satisfied(s.holding(i), s.holding(j)));
      EXPECT_EQ(achievable_universe(s), universe);
      const std::size_t now = satisfied_count(s, universe);
      EXPECT_GE(now, satisfied);
      satisfied = now;
    }
  }
}
