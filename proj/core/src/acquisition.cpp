#include "gtx/acquisition.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gtx/errors.hpp"

namespace gtx {
namespace {

// Group sizes are real-valued products like w ln n; absorb rounding noise
// before taking the ceiling.
constexpr double kCeilSlack = 1e-9;

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string("regime parameter ") + name + " must be positive and finite");
  }
}

struct LogWindow {
  double lo;
  double hi;
};

LogWindow log_window(const RegimeSpec& spec) {
  return std::visit(
      [](const auto& r) -> LogWindow {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, LogRegime>) {
          require_positive(r.c, "c");
          return {-2.0 / r.c, -1.0 / r.c};
        } else if constexpr (std::is_same_v<R, LinearRegime>) {
          require_positive(r.alpha, "alpha");
          require_positive(r.w, "w");
          require_positive(r.v, "v");
          return {-2.0 / r.v, -2.0 / r.w};
        } else {
          require_positive(r.alpha, "alpha");
          require_positive(r.w, "w");
          require_positive(r.v, "v");
          if (!(r.z >= 1.0)) throw std::invalid_argument("regime parameter z must be >= 1");
          return {-2.0 / r.v, -(1.0 + r.z) / r.w};
        }
      },
      spec.kind);
}

}  // namespace

Instance sample_instance(std::size_t n, std::size_t m, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sampling probability must lie in [0, 1]");
  Instance inst(n, m);
  // Two 32-bit lanes per draw; a lane below the threshold includes the file.
  const auto threshold = static_cast<std::uint64_t>(std::llround(std::ldexp(p, 32)));
  std::uint64_t draw = 0;
  bool have_lane = false;
  for (std::size_t f = 0; f < n; ++f) {
    const std::size_t word = f / 64;
    const std::uint64_t bit = std::uint64_t{1} << (f % 64);
    for (std::size_t u = 0; u < m; ++u) {
      std::uint64_t lane = 0;
      if (have_lane) {
        lane = draw >> 32;
        have_lane = false;
      } else {
        draw = rng.next();
        lane = draw & 0xFFFFFFFFULL;
        have_lane = true;
      }
      if (lane < threshold) inst.holding(u).words()[word] |= bit;
    }
  }
  return inst;
}

Instance sample_instance(const SamplingParams& params) {
  Rng rng(params.seed);
  return sample_instance(params.n, params.m, params.p, rng);
}

QWindow q_window(const RegimeSpec& spec) {
  const LogWindow lw = log_window(spec);
  if (!(lw.lo < lw.hi)) {
    std::ostringstream msg;
    msg << "empty q window: log q must lie in (" << lw.lo << ", " << lw.hi << ") for " << describe(spec);
    throw EmptyWindow(msg.str());
  }
  return {std::exp(lw.lo), std::exp(lw.hi)};
}

double pick_q(const RegimeSpec& spec) {
  q_window(spec);  // validates
  const LogWindow lw = log_window(spec);
  return std::exp(0.5 * (lw.lo + lw.hi));
}

std::size_t power_of_two_below(double x) {
  if (!(x > 1.0) || !std::isfinite(x)) throw std::invalid_argument("power_of_two_below requires x > 1");
  std::size_t p = 1;
  while (static_cast<double>(p) * 2.0 < x) p *= 2;
  return p;
}

std::size_t floor_power_of_two(std::size_t m) {
  if (m == 0) throw std::invalid_argument("floor_power_of_two requires m >= 1");
  std::size_t p = 1;
  while (p * 2 <= m) p *= 2;
  return p;
}

std::size_t regime_user_count(const RegimeSpec& spec, std::size_t n) {
  if (n < 2) throw std::invalid_argument("regime user count requires n >= 2");
  const double ln_n = std::log(static_cast<double>(n));
  const double users = std::visit(
      [&](const auto& r) -> double {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, LogRegime>) {
          return r.c * ln_n;
        } else if constexpr (std::is_same_v<R, LinearRegime>) {
          return r.alpha * static_cast<double>(n);
        } else {
          return r.alpha * std::pow(static_cast<double>(n), r.z);
        }
      },
      spec.kind);
  return static_cast<std::size_t>(std::llround(users));
}

PartitionPlan plan_partition_for_group(std::size_t group_size) {
  if (group_size < 3) throw std::invalid_argument("partition group size must be at least 3");
  return {group_size, power_of_two_below(static_cast<double>(group_size))};
}

PartitionPlan plan_partition(const RegimeSpec& spec, std::size_t n) {
  if (n < 2) throw std::invalid_argument("partition planning requires n >= 2");
  const double w = std::visit(
      [](const auto& r) -> double {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, LogRegime>) {
          throw std::invalid_argument("Partition+TreeSplit needs a linear or polynomial regime");
        } else {
          return r.w;
        }
      },
      spec.kind);
  require_positive(w, "w");
  const double raw = w * std::log(static_cast<double>(n));
  return plan_partition_for_group(static_cast<std::size_t>(std::ceil(raw - kCeilSlack)));
}

RegimeSpec linear_aposteriori(std::size_t n, double alpha, std::size_t subset_size, double slack) {
  if (n < 2) throw std::invalid_argument("linear_aposteriori requires n >= 2");
  if (subset_size < 2 || (subset_size & (subset_size - 1)) != 0) {
    throw std::invalid_argument("subset size must be a power of two >= 2");
  }
  if (!(slack > 0.0) || slack > static_cast<double>(subset_size)) {
    throw std::invalid_argument("slack must lie in (0, subset_size]");
  }
  const double ln_n = std::log(static_cast<double>(n));
  LinearRegime r;
  r.alpha = alpha;
  r.v = static_cast<double>(subset_size) / ln_n;
  r.w = (static_cast<double>(subset_size) + slack) / ln_n;
  return {r, QMode::APosteriori};
}

std::string describe(const RegimeSpec& spec) {
  std::ostringstream out;
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, LogRegime>) {
          out << "log(c=" << r.c << ")";
        } else if constexpr (std::is_same_v<R, LinearRegime>) {
          out << "linear(alpha=" << r.alpha << ", w=" << r.w << ", v=" << r.v << ")";
        } else {
          out << "poly(alpha=" << r.alpha << ", z=" << r.z << ", w=" << r.w << ", v=" << r.v << ")";
        }
      },
      spec.kind);
  out << (spec.mode == QMode::APriori ? " a-priori" : " a-posteriori");
  return out.str();
}

}  // namespace gtx
