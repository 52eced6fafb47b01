#pragma once

// Fixtures and brute-force reference implementations shared by the tests.
// The oracles here deliberately avoid the library's search code: they work
// on plain bitmasks and enumerate everything.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "gtx/exchange.hpp"
#include "gtx/file_set.hpp"

namespace gtx::test {

/// Instance whose holdings use the given file labels directly as indices.
inline Instance make_instance(std::size_t n, std::initializer_list<std::initializer_list<FileId>> rows) {
  std::vector<FileSet> holdings;
  for (auto row : rows) holdings.emplace_back(n, row);
  return Instance(n, std::move(holdings));
}

/// Instance from bitmask holdings (bit f = file f).
inline Instance from_masks(std::size_t n, const std::vector<std::uint32_t>& masks) {
  std::vector<FileSet> holdings;
  for (auto mask : masks) {
    FileSet s(n);
    for (std::size_t f = 0; f < n; ++f)
      if (mask >> f & 1U) s.insert(f);
    holdings.push_back(std::move(s));
  }
  return Instance(n, std::move(holdings));
}

inline std::uint32_t to_mask(const FileSet& s) {
  std::uint32_t mask = 0;
  for (auto f : s.members()) mask |= 1U << f;
  return mask;
}

/// All m-user holding patterns over n files, as bitmask vectors.
inline std::vector<std::vector<std::uint32_t>> all_patterns(std::size_t m, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  const std::uint64_t per_user = 1ULL << n;
  std::uint64_t total = 1;
  for (std::size_t u = 0; u < m; ++u) total *= per_user;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::uint32_t> masks(m);
    std::uint64_t c = code;
    for (std::size_t u = 0; u < m; ++u) {
      masks[u] = static_cast<std::uint32_t>(c % per_user);
      c /= per_user;
    }
    out.push_back(std::move(masks));
  }
  return out;
}

inline bool naive_gt(std::uint32_t a, std::uint32_t b) { return (a & ~b) != 0 && (b & ~a) != 0; }

/// Lexicographically first (sorted positions of the half holding position 0)
/// balanced division obeying the splitting condition, by full enumeration.
/// With allow_equal, halves with identical unions also count as valid.
inline std::optional<std::vector<std::size_t>> naive_first_division(const std::vector<std::uint32_t>& group,
                                                                    bool allow_equal = false) {
  const std::size_t d = group.size();
  std::optional<std::vector<std::size_t>> best;
  for (std::uint32_t sel = 0; sel < (1U << d); ++sel) {
    if (!(sel & 1U) || static_cast<std::size_t>(std::popcount(sel)) != d / 2) continue;
    std::uint32_t left = 0, right = 0;
    std::vector<std::size_t> positions;
    for (std::size_t k = 0; k < d; ++k) {
      if (sel >> k & 1U) {
        left |= group[k];
        positions.push_back(k);
      } else {
        right |= group[k];
      }
    }
    const bool ok = naive_gt(left, right) || (allow_equal && left == right);
    if (ok && (!best || positions < *best)) best = positions;
  }
  return best;
}

/// Maximum number of users that can end up holding the union of all
/// holdings, by breadth-first exploration of every reachable state.
inline std::size_t naive_optimum(const std::vector<std::uint32_t>& start) {
  std::uint32_t universe = 0;
  for (auto h : start) universe |= h;
  auto score = [&](const std::vector<std::uint32_t>& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), universe));
  };
  std::set<std::vector<std::uint32_t>> seen{start};
  std::vector<std::vector<std::uint32_t>> frontier{start};
  std::size_t best = score(start);
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& s : frontier) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          if (!naive_gt(s[i], s[j])) continue;
          auto t = s;
          t[i] = t[j] = s[i] | s[j];
          if (seen.insert(t).second) {
            best = std::max(best, score(t));
            next.push_back(std::move(t));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return best;
}

}  // namespace gtx::test
