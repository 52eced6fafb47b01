#include "gtx/division.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "gtx/errors.hpp"

namespace gtx {
namespace {

// Full enumeration is used up to this group size (C(16, 8) / 2 = 6435
// divisions); larger groups try this many canonical divisions first and then
// switch to the witness search.
constexpr std::size_t kEnumerateUpTo = 16;
constexpr std::size_t kEnumerationProbe = 32;
constexpr std::size_t kEqualUnionProbe = 4096;

void require_even_group(std::span<const UserId> group) {
  if (group.size() < 2 || group.size() % 2 != 0) {
    throw std::invalid_argument("balanced division needs an even group of at least 2 users, got " +
                                std::to_string(group.size()));
  }
}

bool halves_ok(const FileSet& left, const FileSet& right, SplitRule rule) {
  return gt_satisfied(left, right) || (rule == SplitRule::AllowEqual && left == right);
}

/// Unions of the canonical half (given by positions) and its complement.
std::pair<FileSet, FileSet> side_unions(const Instance& state, std::span<const UserId> group,
                                        std::span<const std::size_t> left_positions) {
  FileSet left(state.n());
  FileSet right(state.n());
  std::size_t next = 0;
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (next < left_positions.size() && left_positions[next] == k) {
      left |= state.holding(group[k]);
      ++next;
    } else {
      right |= state.holding(group[k]);
    }
  }
  return {std::move(left), std::move(right)};
}

/// Distinct holder sets (over group positions) of size 1..d/2.
std::vector<FileSet> small_holder_sets(const Instance& state, std::span<const UserId> group) {
  const std::size_t d = group.size();
  std::vector<FileSet> holders(state.n(), FileSet(d));
  for (std::size_t k = 0; k < d; ++k) {
    state.holding(group[k]).for_each([&](FileId f) { holders[f].insert(k); });
  }
  std::vector<FileSet> out;
  out.reserve(holders.size());
  for (auto& h : holders) {
    const std::size_t size = h.size();
    if (size >= 1 && size <= d / 2) out.push_back(std::move(h));
  }
  auto less = [](const FileSet& a, const FileSet& b) {
    return std::lexicographical_compare(a.words().begin(), a.words().end(), b.words().begin(), b.words().end());
  };
  std::sort(out.begin(), out.end(), less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// For equal-size position sets: true iff a precedes b in canonical order,
/// i.e. the smallest position in their symmetric difference belongs to a.
bool lex_less(const FileSet& a, const FileSet& b) {
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t k = 0; k < wa.size(); ++k) {
    const std::uint64_t diff = wa[k] ^ wb[k];
    if (diff != 0) return (wa[k] & (diff & (~diff + 1))) != 0;
  }
  return false;
}

std::size_t lowest_member(const FileSet& s) {
  const auto w = s.words();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(w[k]));
  }
  return s.capacity();
}

std::size_t lowest_missing(const FileSet& s) {
  const auto w = s.words();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (~w[k] != 0) return std::min(s.capacity(), k * 64 + static_cast<std::size_t>(std::countr_one(w[k])));
  }
  return s.capacity();
}

/// Adds the `need` lowest positions below d that are in neither `half` nor
/// `excluded`.
void fill_lowest_free(FileSet& half, const FileSet& excluded, std::size_t need, std::size_t d) {
  auto hw = half.words();
  const auto ew = excluded.words();
  for (std::size_t w = 0; w < hw.size() && need > 0; ++w) {
    std::uint64_t free = ~(hw[w] | ew[w]);
    if (const std::size_t tail = d - w * 64; tail < 64) free &= (std::uint64_t{1} << tail) - 1;
    const auto count = static_cast<std::size_t>(std::popcount(free));
    if (count <= need) {
      hw[w] |= free;
      need -= count;
      continue;
    }
    for (; need > 0; --need) {
      const std::uint64_t low = free & (~free + 1);
      hw[w] |= low;
      free ^= low;
    }
  }
}

// A division obeys the splitting condition iff some file is held only inside
// the left half and some other file only inside the right half. So a valid
// division exists iff two nonempty holder sets of size <= d/2 are disjoint;
// for a fixed witness pair (X forced left, Y forced right) the canonically
// first half is X plus position 0 plus the lowest remaining free positions.
std::optional<FileSet> witness_first_half(const Instance& state, std::span<const UserId> group) {
  const std::size_t d = group.size();
  const std::size_t half = d / 2;
  const auto holders = small_holder_sets(state, group);

  // A candidate built around Y misses position min(Y) unless it ran out of
  // room earlier, so its first missing position is at most min(Y). Scanning
  // Y by descending minimum lets the search stop once that bound falls below
  // the best candidate's first missing position.
  std::vector<std::pair<std::size_t, const FileSet*>> ys;
  for (const auto& y : holders) {
    if (!y.contains(0)) ys.emplace_back(lowest_member(y), &y);
  }
  std::stable_sort(ys.begin(), ys.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  std::optional<FileSet> best;
  std::size_t best_gap = 0;
  for (const auto& [y_min, y] : ys) {
    if (best && y_min < best_gap) break;
    for (const auto& x : holders) {
      if (x.intersects(*y)) continue;
      FileSet candidate = x;
      candidate.insert(0);
      const std::size_t required_size = candidate.size();
      if (required_size > half) continue;
      fill_lowest_free(candidate, *y, half - required_size, d);
      if (!best || lex_less(candidate, *best)) {
        best = std::move(candidate);
        best_gap = lowest_missing(*best);
      }
    }
  }
  return best;
}

}  // namespace

bool obeys_splitting_condition(const Instance& state, std::span<const UserId> left, std::span<const UserId> right,
                               SplitRule rule) {
  return halves_ok(group_universe(state, left), group_universe(state, right), rule);
}

void for_each_balanced_division(std::size_t d, const std::function<bool(std::span<const std::size_t>)>& visit) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("balanced divisions need an even group size >= 2");
  const std::size_t half = d / 2;
  std::vector<std::size_t> pos(half);
  for (std::size_t k = 0; k < half; ++k) pos[k] = k;
  while (true) {
    if (!visit(pos)) return;
    // Advance the combination of pos[1..half-1] drawn from {1, ..., d-1}.
    std::size_t i = half;
    while (i > 1 && pos[i - 1] == d - half + (i - 1)) --i;
    if (i <= 1) return;
    --i;
    ++pos[i];
    for (std::size_t k = i + 1; k < half; ++k) pos[k] = pos[k - 1] + 1;
  }
}

Division division_from_positions(std::span<const UserId> group, std::span<const std::size_t> left_positions) {
  Division div;
  std::size_t next = 0;
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (next < left_positions.size() && left_positions[next] == k) {
      div.left.push_back(group[k]);
      ++next;
    } else {
      div.right.push_back(group[k]);
    }
  }
  return div;
}

std::optional<Division> find_valid_division(const Instance& state, std::span<const UserId> group,
                                            DivisionSearch mode, SplitRule rule) {
  require_even_group(group);
  const std::size_t d = group.size();
  if (mode == DivisionSearch::Witness && rule == SplitRule::AllowEqual) {
    throw std::invalid_argument("the witness search only decides the strict splitting rule");
  }

  if (mode != DivisionSearch::Witness) {
    const bool full = mode == DivisionSearch::Enumerate || d <= kEnumerateUpTo;
    const std::size_t probe = rule == SplitRule::AllowEqual ? kEqualUnionProbe : kEnumerationProbe;
    std::optional<Division> found;
    std::size_t visited = 0;
    bool exhausted = true;
    for_each_balanced_division(d, [&](std::span<const std::size_t> left) {
      if (!full && visited == probe) {
        exhausted = false;
        return false;
      }
      ++visited;
      auto [fl, fr] = side_unions(state, group, left);
      if (halves_ok(fl, fr, rule)) {
        found = division_from_positions(group, left);
        return false;
      }
      return true;
    });
    if (found || exhausted) return found;
  }

  const auto first = witness_first_half(state, group);
  if (!first) return std::nullopt;
  return division_from_positions(group, first->members());
}

bool has_valid_division(const Instance& state, std::span<const UserId> group, SplitRule rule) {
  if (rule == SplitRule::AllowEqual) return find_valid_division(state, group, DivisionSearch::Auto, rule).has_value();
  require_even_group(group);
  const std::size_t d = group.size();
  // Most random groups accept the very first canonical division.
  std::vector<std::size_t> first(d / 2);
  for (std::size_t k = 0; k < first.size(); ++k) first[k] = k;
  auto [fl, fr] = side_unions(state, group, first);
  if (gt_satisfied(fl, fr)) return true;
  if (d == 2) return false;

  const auto holders = small_holder_sets(state, group);
  for (std::size_t a = 0; a < holders.size(); ++a) {
    for (std::size_t b = a + 1; b < holders.size(); ++b) {
      if (!holders[a].intersects(holders[b])) return true;
    }
  }
  return false;
}

CulpritAnalysis analyze_culprit(const Instance& state, std::span<const UserId> group) {
  require_even_group(group);
  const std::size_t d = group.size();
  if (d > kCulpritMaxGroup) {
    throw InstanceTooLarge("culprit analysis enumerates every division; group of " + std::to_string(d) +
                           " exceeds " + std::to_string(kCulpritMaxGroup));
  }
  CulpritAnalysis result;
  FileSet common = FileSet::full(d);
  for_each_balanced_division(d, [&](std::span<const std::size_t> left) {
    auto [fl, fr] = side_unions(state, group, left);
    if (gt_satisfied(fl, fr)) {
      throw PreconditionViolated("culprit analysis requires a group with no valid division");
    }
    if (fl == fr) {
      result.has_equal_union_division = true;
      return true;
    }
    FileSet superset_side(d);
    if (fr.is_subset_of(fl)) {
      for (std::size_t k : left) superset_side.insert(k);
    } else {
      superset_side = FileSet::full(d);
      for (std::size_t k : left) superset_side.erase(k);
    }
    common &= superset_side;
    return true;
  });
  common.for_each([&](std::size_t k) { result.intersection.push_back(group[k]); });
  if (result.intersection.size() == 1) result.culprit = result.intersection.front();
  return result;
}

std::optional<UserId> culprit_user(const Instance& state, std::span<const UserId> group) {
  return analyze_culprit(state, group).culprit;
}

namespace {

std::optional<std::vector<UserId>> first_undividable_impl(const Instance& state, std::span<const UserId> group,
                                                          SplitRule rule) {
  if (group.size() == 2) {
    if (halves_ok(state.holding(group[0]), state.holding(group[1]), rule)) return std::nullopt;
    return std::vector<UserId>(group.begin(), group.end());
  }
  const auto div = find_valid_division(state, group, DivisionSearch::Auto, rule);
  if (!div) return std::vector<UserId>(group.begin(), group.end());
  if (auto bad = first_undividable_impl(state, div->left, rule)) return bad;
  return first_undividable_impl(state, div->right, rule);
}

void require_power_of_two(std::size_t size) {
  if (size < 2 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("split tree needs a power-of-two group of at least 2 users, got " +
                                std::to_string(size));
  }
}

}  // namespace

std::optional<std::vector<UserId>> first_undividable_group(const Instance& state, std::span<const UserId> group,
                                                          SplitRule rule) {
  require_power_of_two(group.size());
  return first_undividable_impl(state, group, rule);
}

namespace {

bool random_split_impl(const Instance& state, std::span<const UserId> group, Rng& rng, SplitRule rule) {
  if (group.size() < 2) return false;
  std::vector<UserId> shuffled(group.begin(), group.end());
  rng.shuffle(std::span<UserId>(shuffled));
  const std::span<const UserId> all(shuffled);
  const auto left = all.first(all.size() / 2);
  const auto right = all.subspan(all.size() / 2);
  if (!obeys_splitting_condition(state, left, right, rule)) return true;
  return random_split_impl(state, left, rng, rule) || random_split_impl(state, right, rng, rule);
}

}  // namespace

bool random_split_tree_fails(const Instance& state, std::span<const UserId> group, Rng& rng, SplitRule rule) {
  require_power_of_two(group.size());
  return random_split_impl(state, group, rng, rule);
}

}  // namespace gtx
