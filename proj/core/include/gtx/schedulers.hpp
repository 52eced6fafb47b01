#pragma once

// Schedulers producing feasible exchange schedules: UniquePick pruning,
// TreeSplit, the padded TreeSplit for arbitrary m, Partition+TreeSplit, a
// greedy completion fallback and an exhaustive optimum for tiny instances.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gtx/acquisition.hpp"
#include "gtx/division.hpp"
#include "gtx/exchange.hpp"
#include "gtx/rng.hpp"

namespace gtx {

/// Recursive record of the divisions made by TreeSplit. Internal nodes have
/// exactly two children (left half first); leaves hold a single user.
struct SplitTree {
  std::vector<UserId> group;
  int level = 0;
  std::vector<SplitTree> children;
};

/// Re-draw a uniformly random balanced division up to max_attempts times.
struct RandomRetry {
  std::size_t max_attempts = 64;
};

/// Canonically first division obeying the splitting condition, if any.
struct Exhaustive {};

using DivisionPolicy = std::variant<RandomRetry, Exhaustive>;

/// Prunes users (ascending index order) whose every file is still held by
/// another surviving user. The survivors' union equals the union of the
/// candidates. Returns survivors in ascending order.
std::vector<UserId> unique_pick(const Instance& state);
std::vector<UserId> unique_pick(const Instance& state, std::span<const UserId> candidates);

struct TreeSplitResult {
  Schedule schedule;
  SplitTree tree;
};

/// |group| must be a power of two >= 2. On success, replaying the schedule
/// gives every group member the union of the group's holdings. Throws
/// NoValidDivision when the policy cannot divide some node.
/// Under SplitRule::AllowEqual a node whose halves end with equal unions
/// needs no cross exchanges, so none are scheduled for it.
TreeSplitResult tree_split(const Instance& state, std::span<const UserId> group, const DivisionPolicy& policy,
                           Rng& rng, SplitRule rule = SplitRule::Strict);

struct ScheduleOutcome {
  Schedule schedule;
  std::vector<UserId> satisfied;
};

/// Repeatedly applies the GT-eligible candidate pair with the largest
/// resulting union (ties to the lowest (i, j)) until none remains. Satisfied
/// users are those ending with the candidates' union.
ScheduleOutcome greedy_completion(const Instance& state, std::span<const UserId> candidates);

struct PadTreeSplitResult {
  Schedule schedule;
  std::vector<UserId> satisfied;  // users holding F at the end
  std::vector<UserId> kept;       // UniquePick survivors
  std::size_t tree_size = 0;      // 2^floor(log2 m)
  bool used_tree_split = false;   // false: greedy completion on the survivors
  std::optional<SplitTree> tree;
};

/// UniquePick, then either pad the survivors to 2^floor(log2 m) users with the
/// lowest-index pruned users and run TreeSplit, or, when more than that many
/// survive, run greedy completion on them. m >= 2. Propagates NoValidDivision.
PadTreeSplitResult pad_and_tree_split(const Instance& state, const DivisionPolicy& policy, Rng& rng);

enum class GroupFailure { None, NoValidDivision, NotFileCover };

struct GroupOutcome {
  std::vector<UserId> members;
  std::vector<UserId> kept;
  bool used_tree_split = false;
  GroupFailure failure = GroupFailure::None;
  std::size_t satisfied = 0;
};

struct PartitionResult {
  Schedule schedule;
  std::vector<UserId> satisfied;  // users holding the target at the end
  std::vector<GroupOutcome> groups;
  std::vector<UserId> unscheduled;  // partition remainder
};

/// Random partition into floor(m / group_size) groups, then per group
/// UniquePick followed by greedy completion (more survivors than
/// subset_size) or padding to subset_size and TreeSplit. Group failures are
/// recorded, not thrown.
PartitionResult partition_tree_split(const Instance& state, const PartitionPlan& plan, Target target,
                                     const DivisionPolicy& policy, Rng& rng);

/// Validates the regime's q window (throws EmptyWindow) and plans the
/// partition from it before running.
PartitionResult partition_tree_split(const Instance& state, const RegimeSpec& spec, Target target,
                                     const DivisionPolicy& policy, Rng& rng);

struct OracleLimits {
  std::size_t max_users = 5;
  std::size_t max_files = 6;
};

/// Hard ceiling on OracleLimits: states are packed into 64-bit keys.
inline constexpr std::size_t kOracleMaxUsers = 8;
inline constexpr std::size_t kOracleMaxFiles = 8;

struct OptimalResult {
  std::size_t satisfied = 0;
  Schedule schedule;
};

/// Exact maximum number of users holding F over all feasible schedules.
/// Throws InstanceTooLarge beyond `limits`.
OptimalResult optimal_schedule(const Instance& state, OracleLimits limits = {});

}  // namespace gtx
