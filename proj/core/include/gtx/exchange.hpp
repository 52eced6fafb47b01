#pragma once

// Give-and-take exchange semantics: the feasibility test, pairwise exchange,
// schedule replay and satisfaction accounting.

#include <cstddef>
#include <span>
#include <vector>

#include "gtx/file_set.hpp"

namespace gtx {

using UserId = std::size_t;

struct ExchangeEvent {
  UserId i = 0;
  UserId j = 0;

  friend bool operator==(const ExchangeEvent&, const ExchangeEvent&) = default;
};

/// Ordered list of pairwise exchanges, applied strictly sequentially.
using Schedule = std::vector<ExchangeEvent>;

/// What a satisfied user must hold: the union of initial holdings (F) or the
/// server's full file set (T).
enum class Target { Achievable, Complete };

/// n files, m users and the current holdings of every user.
class Instance {
 public:
  Instance() = default;
  /// m users with empty holdings.
  Instance(std::size_t n, std::size_t m);
  /// Throws std::invalid_argument unless every holding has capacity n.
  Instance(std::size_t n, std::vector<FileSet> holdings);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return holdings_.size(); }

  const FileSet& holding(UserId u) const { return holdings_.at(u); }
  FileSet& holding(UserId u) { return holdings_.at(u); }
  std::span<const FileSet> holdings() const noexcept { return holdings_; }

  /// Applies `e` in place; throws GtViolation if the pair fails the GT test.
  void exchange_in_place(ExchangeEvent e);

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<FileSet> holdings_;
};

/// True iff each set holds at least one file the other lacks.
bool gt_satisfied(const FileSet& a, const FileSet& b);

Instance exchange(const Instance& state, ExchangeEvent e);

/// Replays `s` from `state`. Fails fast with GtViolation carrying the index of
/// the first illegal step.
Instance apply_schedule(const Instance& state, const Schedule& s);

/// Union of all current holdings.
FileSet achievable_universe(const Instance& state);
FileSet group_universe(const Instance& state, std::span<const UserId> group);

std::size_t satisfied_count(const Instance& state, const FileSet& target);
/// Users whose holdings contain `target`, ascending.
std::vector<UserId> satisfied_users(const Instance& state, const FileSet& target);

/// F or T for `state`, as a concrete file set.
FileSet target_set(const Instance& state, Target target);

}  // namespace gtx
