#pragma once

// Random-sampling acquisition and the regime-specific windows for the
// non-pickup probability q. Logarithms are natural throughout.

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "gtx/exchange.hpp"
#include "gtx/rng.hpp"

namespace gtx {

struct SamplingParams {
  std::size_t n = 0;
  std::size_t m = 0;
  double p = 0.0;  // per-file pickup probability
  std::uint64_t seed = 0;
};

/// Every (user, file) pair is included independently with probability p.
/// Draws are file-major (file 0 for every user, then file 1, ...) so, for a
/// fixed stream, the instance with n files is the n-file prefix of the one
/// with n + 1 files.
Instance sample_instance(std::size_t n, std::size_t m, double p, Rng& rng);
Instance sample_instance(const SamplingParams& params);

/// m = c ln n.
struct LogRegime {
  double c = 1.0;
};

/// m = alpha n, groups of w ln n users, TreeSplit on v ln n of them.
struct LinearRegime {
  double alpha = 1.0;
  double w = 1.0;
  double v = 1.0;
};

/// m = alpha n^z.
struct PolyRegime {
  double alpha = 1.0;
  double z = 2.0;
  double w = 1.0;
  double v = 1.0;
};

enum class QMode { APriori, APosteriori };

struct RegimeSpec {
  std::variant<LogRegime, LinearRegime, PolyRegime> kind;
  QMode mode = QMode::APosteriori;
};

struct QWindow {
  double lo = 0.0;  // exclusive
  double hi = 0.0;  // exclusive
};

/// Open interval of admissible q. Throws EmptyWindow when lo >= hi and
/// std::invalid_argument for non-positive parameters.
QWindow q_window(const RegimeSpec& spec);

/// Geometric midpoint of q_window(spec).
double pick_q(const RegimeSpec& spec);

/// Largest power of two strictly below x; x > 1.
std::size_t power_of_two_below(double x);

/// Largest power of two not exceeding m; m >= 1.
std::size_t floor_power_of_two(std::size_t m);

/// Group and TreeSplit subset sizes for Partition+TreeSplit.
struct PartitionPlan {
  std::size_t group_size = 0;   // ceil(w ln n)
  std::size_t subset_size = 0;  // power_of_two_below(group_size)
};

/// Users per regime at n files: round(c ln n), round(alpha n) or
/// round(alpha n^z).
std::size_t regime_user_count(const RegimeSpec& spec, std::size_t n);

/// Requires a linear or polynomial regime and n >= 2.
PartitionPlan plan_partition(const RegimeSpec& spec, std::size_t n);
PartitionPlan plan_partition_for_group(std::size_t group_size);

/// A-posteriori linear-regime parameters: v ln n = subset_size and
/// w ln n = subset_size + slack, so the group size is subset_size + ceil(slack).
RegimeSpec linear_aposteriori(std::size_t n, double alpha, std::size_t subset_size, double slack = 0.5);

std::string describe(const RegimeSpec& spec);

}  // namespace gtx
