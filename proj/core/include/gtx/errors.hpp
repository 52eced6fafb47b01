#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtx {

// Contract violations (bad arguments, mismatched capacities) are reported as
// std::invalid_argument. The types below are domain outcomes callers are
// expected to branch on.

/// An exchange was attempted between users that fail the give-and-take test.
class GtViolation : public std::runtime_error {
 public:
  GtViolation(std::size_t i, std::size_t j, std::optional<std::size_t> step = std::nullopt);

  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }
  /// Position within the replayed schedule, when raised by apply_schedule.
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  std::size_t i_;
  std::size_t j_;
  std::optional<std::size_t> step_;
};

/// A split-tree node for which the division policy found no balanced
/// division satisfying the splitting condition.
class NoValidDivision : public std::runtime_error {
 public:
  NoValidDivision(std::vector<std::size_t> group, int level);

  const std::vector<std::size_t>& group() const noexcept { return group_; }
  int level() const noexcept { return level_; }

 private:
  std::vector<std::size_t> group_;
  int level_;
};

/// A q-selection window admits no value.
class EmptyWindow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input exceeds an exhaustive-search guard.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's documented precondition does not hold for the given state.
class PreconditionViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search over a finite grid found no qualifying point.
class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gtx
