#include "gtx/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gtx {
namespace {

void require_probability(long double x, const char* name) {
  if (!(x >= 0.0L && x <= 1.0L)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

void require_even(std::size_t d, const char* name) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument(std::string(name) + " must be even and >= 2");
}

/// base^n for base in [0, 2], via log1p when base is close to 1.
long double power(long double base, std::size_t n) {
  if (n == 0) return 1.0L;
  if (base <= 0.0L) return 0.0L;
  return std::exp(static_cast<long double>(n) * std::log1p(base - 1.0L));
}

BoundValue make_bound(long double value, bool upper = true) { return {value, upper, value > 1.0L}; }

}  // namespace

BoundValue p_split_violation(std::size_t n, std::size_t d, long double q) {
  require_probability(q, "q");
  require_even(d, "d");
  const long double half = std::pow(q, static_cast<long double>(d / 2));
  const long double full = std::pow(q, static_cast<long double>(d));
  return make_bound(2.0L * power(1.0L + full - half, n));
}

long double p_split_violation_exact(std::size_t n, std::size_t d, long double q) {
  require_probability(q, "q");
  require_even(d, "d");
  const long double half = std::pow(q, static_cast<long double>(d / 2));
  const long double both = (1.0L - half) * (1.0L - half);
  const long double subset = both + half;                                 // per file: left <= right
  const long double equal = both + std::pow(q, static_cast<long double>(d));  // per file: left == right
  return 2.0L * power(subset, n) - power(equal, n);
}

BoundValue tree_error_bound(std::size_t n, std::size_t m, long double q) {
  require_probability(q, "q");
  require_even(m, "m");
  const long double half = std::pow(q, static_cast<long double>(m / 2));
  const long double full = std::pow(q, static_cast<long double>(m));
  return make_bound(2.0L * static_cast<long double>(m) * power(1.0L + full - half, n));
}

std::vector<LevelTerm> tree_level_terms(std::size_t n, std::size_t m, long double q) {
  require_probability(q, "q");
  if (m < 2 || (m & (m - 1)) != 0) throw std::invalid_argument("m must be a power of two >= 2");
  std::vector<LevelTerm> levels;
  for (std::size_t d = m; d >= 2; d /= 2) {
    LevelTerm t;
    t.group_size = d;
    t.groups = m / d;
    t.term = static_cast<long double>(t.groups) * p_split_violation(n, d, q).value;
    levels.push_back(t);
  }
  return levels;
}

BoundValue tree_error_union_bound(std::size_t n, std::size_t m, long double q) {
  long double total = 0.0L;
  for (const auto& t : tree_level_terms(n, m, q)) total += t.term;
  return make_bound(total);
}

FileCoverMiss p_not_file_cover(std::size_t n, std::size_t m, long double q) {
  require_probability(q, "q");
  const long double miss_one = std::pow(q, static_cast<long double>(m));
  FileCoverMiss out;
  out.exact = n == 0 ? 0.0L : -std::expm1(static_cast<long double>(n) * std::log1p(-miss_one));
  if (miss_one >= 1.0L) out.exact = n == 0 ? 0.0L : 1.0L;
  out.bound = static_cast<long double>(n) * miss_one;
  return out;
}

BoundValue partition_error_bound(std::size_t n, std::size_t m, long double w, long double v, long double q,
                                 long double z) {
  if (n < 2) throw std::invalid_argument("partition_error_bound needs n >= 2");
  return partition_error_bound_real(static_cast<long double>(n), static_cast<long double>(m), w, v, q, z);
}

BoundValue partition_error_bound_real(long double n, long double m, long double w, long double v, long double q,
                                      long double z) {
  if (!(n > 1.0L)) throw std::invalid_argument("partition_error_bound needs n > 1");
  if (!(m >= 0.0L)) throw std::invalid_argument("m must be non-negative");
  if (!(w > 0.0L) || !(v > 0.0L)) throw std::invalid_argument("w and v must be positive");
  if (!(z >= 1.0L)) throw std::invalid_argument("z must be >= 1");
  if (!(q > 0.0L && q <= 1.0L)) throw std::invalid_argument("q must lie in (0, 1]");
  const long double ln_n = std::log(n);
  const long double ln_q = std::log(q);
  const long double groups = m / (w * ln_n);
  const long double cover_term = n * std::exp(w * ln_n * ln_q);
  const long double half_exp = v * ln_q / 2.0L;  // exponent of n in q^(v ln n / 2)
  const long double split_term =
      2.0L * v * ln_n * std::exp((std::pow(n, half_exp) - 1.0L) * std::pow(n, 1.0L + half_exp));
  return make_bound(groups * (cover_term + split_term));
}

BoundValue p_no_valid_division_bound(std::size_t n, std::size_t d, long double p) {
  require_probability(p, "p");
  require_even(d, "d");
  const long double q = 1.0L - p;
  const long double q_rest = std::pow(q, static_cast<long double>(d - 1));
  const long double p_rest = 1.0L - q_rest;
  const long double base = p + q * (q_rest + p_rest * std::pow(2.0L * p, static_cast<long double>(d / 2)));
  return make_bound(power(base, n));
}

BoundValue existence_error_bound(std::size_t n, std::size_t m, long double p) {
  require_probability(p, "p");
  const long double base = p + (1.0L - p) * (1.0L - p + 2.0L * p * p);
  return make_bound(static_cast<long double>(m) * power(base, n));
}

}  // namespace gtx
