#include "gtx/schedulers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "gtx/division.hpp"
#include "gtx/errors.hpp"

namespace gtx {
namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

void require_users(const Instance& state, std::span<const UserId> users) {
  std::vector<UserId> sorted(users.begin(), users.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("user list contains duplicates");
  }
  if (!sorted.empty() && sorted.back() >= state.m()) {
    throw std::invalid_argument("user index " + std::to_string(sorted.back()) + " out of range");
  }
}

std::optional<Division> random_division(const Instance& state, std::span<const UserId> group,
                                        std::size_t attempts, Rng& rng, SplitRule rule) {
  const std::size_t d = group.size();
  std::vector<std::size_t> order(d);
  for (std::size_t k = 0; k < d; ++k) order[k] = k;
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    rng.shuffle(std::span<std::size_t>(order));
    std::vector<std::size_t> left(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(d / 2));
    std::sort(left.begin(), left.end());
    if (left.front() != 0) {
      // Name the half holding position 0 as the left one.
      std::vector<std::size_t> other;
      std::size_t next = 0;
      for (std::size_t k = 0; k < d; ++k) {
        if (next < left.size() && left[next] == k) {
          ++next;
        } else {
          other.push_back(k);
        }
      }
      left.swap(other);
    }
    Division div = division_from_positions(group, left);
    if (obeys_splitting_condition(state, div.left, div.right, rule)) return div;
  }
  return std::nullopt;
}

SplitTree split_node(const Instance& state, std::span<const UserId> group, int level,
                     const DivisionPolicy& policy, SplitRule rule, Rng& rng, Schedule& out) {
  SplitTree node{{group.begin(), group.end()}, level, {}};
  if (group.size() == 1) return node;

  std::optional<Division> div;
  if (group.size() == 2) {
    if (obeys_splitting_condition(state, group.first(1), group.subspan(1), rule)) {
      div = Division{{group[0]}, {group[1]}};
    }
  } else if (const auto* retry = std::get_if<RandomRetry>(&policy)) {
    div = random_division(state, group, retry->max_attempts, rng, rule);
  } else {
    div = find_valid_division(state, group, DivisionSearch::Auto, rule);
  }
  if (!div) throw NoValidDivision(node.group, level);

  node.children.push_back(split_node(state, div->left, level + 1, policy, rule, rng, out));
  node.children.push_back(split_node(state, div->right, level + 1, policy, rule, rng, out));
  if (group_universe(state, div->left) == group_universe(state, div->right)) return node;
  for (std::size_t k = 0; k < div->left.size(); ++k) out.push_back({div->left[k], div->right[k]});
  return node;
}

/// Lowest-index members of `pool` not in `kept`, appended until `kept` has
/// `size` members; the result is sorted ascending.
std::vector<UserId> pad_to(std::vector<UserId> kept, std::span<const UserId> pool, std::size_t size) {
  std::vector<UserId> sorted_pool(pool.begin(), pool.end());
  std::sort(sorted_pool.begin(), sorted_pool.end());
  for (UserId u : sorted_pool) {
    if (kept.size() >= size) break;
    if (std::find(kept.begin(), kept.end(), u) == kept.end()) kept.push_back(u);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<UserId> all_users(const Instance& state) {
  std::vector<UserId> users(state.m());
  for (UserId u = 0; u < state.m(); ++u) users[u] = u;
  return users;
}

}  // namespace

std::vector<UserId> unique_pick(const Instance& state) { return unique_pick(state, all_users(state)); }

std::vector<UserId> unique_pick(const Instance& state, std::span<const UserId> candidates) {
  require_users(state, candidates);
  std::vector<UserId> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end());

  std::vector<std::size_t> holders(state.n(), 0);
  for (UserId u : order) state.holding(u).for_each([&](FileId f) { ++holders[f]; });

  std::vector<UserId> kept;
  for (UserId u : order) {
    bool has_unique = false;
    state.holding(u).for_each([&](FileId f) { has_unique = has_unique || holders[f] == 1; });
    if (has_unique) {
      kept.push_back(u);
    } else {
      state.holding(u).for_each([&](FileId f) { --holders[f]; });
    }
  }
  return kept;
}

TreeSplitResult tree_split(const Instance& state, std::span<const UserId> group, const DivisionPolicy& policy,
                           Rng& rng, SplitRule rule) {
  if (group.size() < 2 || !is_power_of_two(group.size())) {
    throw std::invalid_argument("tree_split needs a power-of-two group of at least 2 users, got " +
                                std::to_string(group.size()));
  }
  if (const auto* retry = std::get_if<RandomRetry>(&policy); retry && retry->max_attempts == 0) {
    throw std::invalid_argument("RandomRetry needs max_attempts >= 1");
  }
  require_users(state, group);
  TreeSplitResult result;
  result.tree = split_node(state, group, 0, policy, rule, rng, result.schedule);
  return result;
}

ScheduleOutcome greedy_completion(const Instance& state, std::span<const UserId> candidates) {
  require_users(state, candidates);
  std::vector<UserId> users(candidates.begin(), candidates.end());
  std::sort(users.begin(), users.end());

  Instance cur = state;
  ScheduleOutcome out;
  while (true) {
    std::optional<ExchangeEvent> best;
    std::size_t best_size = 0;
    for (std::size_t a = 0; a < users.size(); ++a) {
      for (std::size_t b = a + 1; b < users.size(); ++b) {
        const FileSet& ha = cur.holding(users[a]);
        const FileSet& hb = cur.holding(users[b]);
        if (!gt_satisfied(ha, hb)) continue;
        const std::size_t size = (ha | hb).size();
        if (!best || size > best_size) {
          best = ExchangeEvent{users[a], users[b]};
          best_size = size;
        }
      }
    }
    if (!best) break;
    cur.exchange_in_place(*best);
    out.schedule.push_back(*best);
  }

  const FileSet goal = group_universe(state, users);
  for (UserId u : users) {
    if (goal.is_subset_of(cur.holding(u))) out.satisfied.push_back(u);
  }
  return out;
}

PadTreeSplitResult pad_and_tree_split(const Instance& state, const DivisionPolicy& policy, Rng& rng) {
  if (state.m() < 2) throw std::invalid_argument("pad_and_tree_split needs at least 2 users");
  PadTreeSplitResult result;
  result.kept = unique_pick(state);
  result.tree_size = floor_power_of_two(state.m());

  if (result.kept.empty()) {
    // Nobody holds anything: every user already holds F.
  } else if (result.kept.size() <= result.tree_size) {
    const auto group = pad_to(result.kept, all_users(state), result.tree_size);
    auto split = tree_split(state, group, policy, rng);
    result.schedule = std::move(split.schedule);
    result.tree = std::move(split.tree);
    result.used_tree_split = true;
  } else {
    result.schedule = greedy_completion(state, result.kept).schedule;
  }
  const Instance final_state = apply_schedule(state, result.schedule);
  result.satisfied = satisfied_users(final_state, achievable_universe(state));
  return result;
}

PartitionResult partition_tree_split(const Instance& state, const PartitionPlan& plan, Target target,
                                     const DivisionPolicy& policy, Rng& rng) {
  if (plan.group_size < 3 || plan.subset_size < 2 || !is_power_of_two(plan.subset_size) ||
      plan.subset_size >= plan.group_size) {
    throw std::invalid_argument("partition plan needs group_size >= 3 and a power-of-two subset below it");
  }
  PartitionResult result;
  std::vector<UserId> order = all_users(state);
  rng.shuffle(std::span<UserId>(order));

  const FileSet goal = target_set(state, target);
  const std::size_t groups = state.m() / plan.group_size;
  Instance cur = state;
  for (std::size_t g = 0; g < groups; ++g) {
    GroupOutcome outcome;
    outcome.members.assign(order.begin() + static_cast<std::ptrdiff_t>(g * plan.group_size),
                           order.begin() + static_cast<std::ptrdiff_t>((g + 1) * plan.group_size));
    std::sort(outcome.members.begin(), outcome.members.end());
    if (!goal.is_subset_of(group_universe(state, outcome.members))) outcome.failure = GroupFailure::NotFileCover;

    outcome.kept = unique_pick(state, outcome.members);
    Schedule group_schedule;
    if (outcome.kept.size() > plan.subset_size) {
      group_schedule = greedy_completion(state, outcome.kept).schedule;
    } else {
      const auto subset = pad_to(outcome.kept, outcome.members, plan.subset_size);
      try {
        group_schedule = tree_split(state, subset, policy, rng).schedule;
        outcome.used_tree_split = true;
      } catch (const NoValidDivision&) {
        outcome.failure = GroupFailure::NoValidDivision;
      }
    }
    // Groups are disjoint, so each group's schedule applies to the shared
    // state exactly as it would to the initial one.
    for (const auto& e : group_schedule) cur.exchange_in_place(e);
    result.schedule.insert(result.schedule.end(), group_schedule.begin(), group_schedule.end());
    for (UserId u : outcome.members) {
      if (goal.is_subset_of(cur.holding(u))) ++outcome.satisfied;
    }
    result.groups.push_back(std::move(outcome));
  }
  result.unscheduled.assign(order.begin() + static_cast<std::ptrdiff_t>(groups * plan.group_size), order.end());
  std::sort(result.unscheduled.begin(), result.unscheduled.end());
  result.satisfied = satisfied_users(cur, goal);
  return result;
}

PartitionResult partition_tree_split(const Instance& state, const RegimeSpec& spec, Target target,
                                     const DivisionPolicy& policy, Rng& rng) {
  q_window(spec);
  return partition_tree_split(state, plan_partition(spec, state.n()), target, policy, rng);
}

namespace {

class OracleSearch {
 public:
  OracleSearch(const Instance& start) : start_(start), goal_(achievable_universe(start)) {}

  OptimalResult solve() {
    OptimalResult result;
    result.satisfied = best(start_);
    Instance cur = start_;
    while (satisfied_count(cur, goal_) < result.satisfied) {
      const std::size_t target = best(cur);
      bool advanced = false;
      for (UserId i = 0; i < cur.m() && !advanced; ++i) {
        for (UserId j = i + 1; j < cur.m() && !advanced; ++j) {
          if (!gt_satisfied(cur.holding(i), cur.holding(j))) continue;
          Instance next = exchange(cur, {i, j});
          if (best(next) == target) {
            result.schedule.push_back({i, j});
            cur = std::move(next);
            advanced = true;
          }
        }
      }
      if (!advanced) throw std::logic_error("oracle reconstruction failed");
    }
    return result;
  }

 private:
  // Holdings are permutation-invariant for the objective: key on the sorted
  // multiset of holdings, one byte per user.
  static std::uint64_t key(const Instance& s) {
    std::vector<std::uint8_t> bytes(s.m());
    for (UserId u = 0; u < s.m(); ++u) bytes[u] = static_cast<std::uint8_t>(s.holding(u).words()[0]);
    std::sort(bytes.begin(), bytes.end());
    std::uint64_t k = 0;
    for (auto b : bytes) k = (k << 8) | b;
    return k;
  }

  std::size_t best(const Instance& s) {
    const auto k = key(s);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    std::size_t value = satisfied_count(s, goal_);
    for (UserId i = 0; i < s.m() && value < s.m(); ++i) {
      for (UserId j = i + 1; j < s.m() && value < s.m(); ++j) {
        if (!gt_satisfied(s.holding(i), s.holding(j))) continue;
        value = std::max(value, best(exchange(s, {i, j})));
      }
    }
    memo_.emplace(k, value);
    return value;
  }

  const Instance& start_;
  FileSet goal_;
  std::unordered_map<std::uint64_t, std::size_t> memo_;
};

}  // namespace

OptimalResult optimal_schedule(const Instance& state, OracleLimits limits) {
  if (limits.max_users > kOracleMaxUsers || limits.max_files > kOracleMaxFiles) {
    throw std::invalid_argument("oracle limits exceed the supported maximum of " + std::to_string(kOracleMaxUsers) +
                                " users and " + std::to_string(kOracleMaxFiles) + " files");
  }
  if (state.m() > limits.max_users || state.n() > limits.max_files) {
    throw InstanceTooLarge("exhaustive search limited to m <= " + std::to_string(limits.max_users) +
                           " and n <= " + std::to_string(limits.max_files) + "; got m = " +
                           std::to_string(state.m()) + ", n = " + std::to_string(state.n()));
  }
  if (state.n() == 0 || state.m() == 0) return {state.m(), {}};
  return OracleSearch(state).solve();
}

}  // namespace gtx
