#pragma once

// Closed-form probability expressions for the random-sampling model,
// evaluated in long double. Natural logarithms throughout.
//
// Bounds are reported raw: a value above 1 is kept and flagged rather than
// clamped, so formula shapes stay comparable across parameter grids.

#include <cstddef>
#include <vector>

namespace gtx {

struct BoundValue {
  long double value = 0.0L;
  bool is_upper_bound = true;
  bool clamped = false;  // value > 1

  long double clamped_value() const noexcept { return value > 1.0L ? 1.0L : value; }
};

/// Splitting-condition violation for one division of d users into halves:
/// 2 (1 + q^d - q^(d/2))^n. Upper bound (the two inclusion events overlap).
BoundValue p_split_violation(std::size_t n, std::size_t d, long double q);

/// Exact probability of the same event:
/// 2 ((1 - q^(d/2))^2 + q^(d/2))^n - ((1 - q^(d/2))^2 + q^d)^n.
long double p_split_violation_exact(std::size_t n, std::size_t d, long double q);

/// Random-division TreeSplit error over m users: 2 m (1 + q^m - q^(m/2))^n.
/// Only the root-level term is used; see tree_error_union_bound.
BoundValue tree_error_bound(std::size_t n, std::size_t m, long double q);

struct LevelTerm {
  std::size_t group_size = 0;  // d at this level
  std::size_t groups = 0;      // m / d
  long double term = 0.0L;     // groups * 2 (1 + q^d - q^(d/2))^n
};

/// Per-level contributions of the union bound for a power-of-two m.
std::vector<LevelTerm> tree_level_terms(std::size_t n, std::size_t m, long double q);

/// Sum of tree_level_terms: the union bound over every divided group.
BoundValue tree_error_union_bound(std::size_t n, std::size_t m, long double q);

struct FileCoverMiss {
  long double exact = 0.0L;  // 1 - (1 - q^m)^n
  long double bound = 0.0L;  // n q^m
};

/// Probability that m users jointly miss at least one of n files.
FileCoverMiss p_not_file_cover(std::size_t n, std::size_t m, long double q);

/// Partition+TreeSplit error:
/// (m / (w ln n)) (n q^(w ln n) + 2 v ln n exp((n^(v ln q / 2) - 1) n^(1 + v ln q / 2))).
/// m carries alpha n^z; z is validated (z >= 1) but does not enter otherwise.
BoundValue partition_error_bound(std::size_t n, std::size_t m, long double w, long double v, long double q,
                                 long double z = 1.0L);
/// Same expression with real-valued n and m, as used in asymptotic analyses.
BoundValue partition_error_bound_real(long double n, long double m, long double w, long double v, long double q,
                                      long double z = 1.0L);

/// No balanced division of d users obeys the splitting condition:
/// (p + q (q' + p' (2p)^(d/2)))^n with q' = q^(d-1), p' = 1 - q'.
BoundValue p_no_valid_division_bound(std::size_t n, std::size_t d, long double p);

/// Some group of an m-user split tree has no valid division:
/// m (p + (1 - p)(1 - p + 2 p^2))^n.
BoundValue existence_error_bound(std::size_t n, std::size_t m, long double p);

}  // namespace gtx
