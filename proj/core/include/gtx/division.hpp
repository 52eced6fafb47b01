#pragma once

// Balanced divisions of a user group and the splitting condition.
//
// A division of a group G (|G| = d, even) is a pair of halves (A, B) of d/2
// users each. It obeys the splitting condition when neither half's file
// union contains the other's. Divisions are addressed canonically by the
// half that contains the group's first listed member; canonical order is the
// lexicographic order of that half's sorted positions within G.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gtx/exchange.hpp"
#include "gtx/rng.hpp"

namespace gtx {

struct Division {
  std::vector<UserId> left;   // contains group[0]
  std::vector<UserId> right;

  friend bool operator==(const Division&, const Division&) = default;
};

/// How a division whose halves have equal file unions is treated.
enum class SplitRule {
  Strict,      // equal unions violate the condition (each half must hold a file the other lacks)
  AllowEqual,  // only a strict containment violates it; equal halves need no exchange
};

bool obeys_splitting_condition(const Instance& state, std::span<const UserId> left, std::span<const UserId> right,
                               SplitRule rule = SplitRule::Strict);

/// Calls `visit` with the sorted positions (into the group) of the canonical
/// half for each of the C(d, d/2) / 2 divisions, in canonical order. Stops
/// early when `visit` returns false.
void for_each_balanced_division(std::size_t d, const std::function<bool(std::span<const std::size_t>)>& visit);

Division division_from_positions(std::span<const UserId> group, std::span<const std::size_t> left_positions);

enum class DivisionSearch {
  Auto,       // enumerate while cheap, then fall back to the witness search
  Enumerate,  // full canonical enumeration
  Witness,    // holder-set witness search only
};

/// First division in canonical order that obeys the splitting condition, or
/// nullopt when none exists. Under the strict rule all search modes return
/// the same answer.
///
/// Under SplitRule::AllowEqual, groups above 16 users are searched over the
/// first 4096 canonical divisions and then by the witness search. That finds
/// any division with a strict difference, but an equal-union division past
/// the probe can be missed (and then the result need not be canonically
/// first). A group with a file held by a single member has no equal-union
/// division, so the answer is exact there. Witness mode rejects AllowEqual.
std::optional<Division> find_valid_division(const Instance& state, std::span<const UserId> group,
                                            DivisionSearch mode = DivisionSearch::Auto,
                                            SplitRule rule = SplitRule::Strict);

/// Cheaper existence-only check.
bool has_valid_division(const Instance& state, std::span<const UserId> group, SplitRule rule = SplitRule::Strict);

struct CulpritAnalysis {
  /// Users on the strict-superset side of every division without tied unions.
  std::vector<UserId> intersection;
  /// Some division had equal unions on both sides (it constrains nothing).
  bool has_equal_union_division = false;
  std::optional<UserId> culprit;  // set iff intersection has one member
};

/// Divisions checked exhaustively; groups larger than this are rejected.
inline constexpr std::size_t kCulpritMaxGroup = 20;

/// Throws PreconditionViolated when a valid division exists and
/// InstanceTooLarge when |group| > kCulpritMaxGroup.
CulpritAnalysis analyze_culprit(const Instance& state, std::span<const UserId> group);
std::optional<UserId> culprit_user(const Instance& state, std::span<const UserId> group);

/// Descends the split tree over `group` (|group| a power of two), at each
/// node taking the canonical-first valid division. Returns the first node
/// (in depth-first order) with no valid division, or nullopt when every node
/// can be divided.
std::optional<std::vector<UserId>> first_undividable_group(const Instance& state, std::span<const UserId> group,
                                                          SplitRule rule = SplitRule::Strict);

/// Descends with a single uniformly random division per node and reports
/// whether any of them violates the splitting condition.
bool random_split_tree_fails(const Instance& state, std::span<const UserId> group, Rng& rng,
                             SplitRule rule = SplitRule::Strict);

}  // namespace gtx
