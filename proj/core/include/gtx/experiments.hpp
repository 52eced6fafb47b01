#pragma once

// Seeded Monte Carlo harness: scheduler trials, the minimum-n threshold
// sweep, closed-form grids and Monte Carlo verification of the bounds.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtx/acquisition.hpp"
#include "gtx/bounds.hpp"
#include "gtx/exchange.hpp"
#include "gtx/schedulers.hpp"

namespace gtx {

enum class SchedulerKind { PadTreeSplit, PartitionTreeSplit, Greedy, Oracle };

struct TrialConfig {
  /// When set, m = regime_user_count(regime, n) and p = 1 - pick_q(regime);
  /// otherwise the explicit m and p are used.
  std::optional<RegimeSpec> regime;
  std::size_t n = 0;
  std::size_t m = 0;
  double p = 0.0;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  Target target = Target::Achievable;
  SchedulerKind scheduler = SchedulerKind::PadTreeSplit;
  DivisionPolicy division_policy = RandomRetry{};
  /// Partition group size when no linear/polynomial regime is given.
  std::optional<std::size_t> group_size;
  OracleLimits oracle_limits;
};

struct ResolvedTrialParams {
  std::size_t n = 0;
  std::size_t m = 0;
  double p = 0.0;
  std::optional<PartitionPlan> plan;
};

/// Validates the config and derives (n, m, p) and the partition plan.
/// Throws std::invalid_argument (or EmptyWindow) on inconsistent settings.
ResolvedTrialParams resolve(const TrialConfig& config);

enum class FailureKind { NoValidDivision, NotFileCover };

struct TrialReport {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double p = 0.0;
  std::size_t satisfied_count = 0;
  double satisfied_fraction = 0.0;  // satisfied_count / m
  std::optional<FailureKind> failure_kind;
  std::size_t failed_groups = 0;  // Partition+TreeSplit only
  std::size_t schedule_length = 0;
  double wall_time_seconds = 0.0;
};

/// Trial k samples its instance from derive_seed(base_seed, k); schedulers
/// draw from a second stream derive_seed(that seed, 1). Every produced
/// schedule is replayed on the sampled instance before it is reported.
std::vector<TrialReport> run_trials(const TrialConfig& config);

struct SweepPoint {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t existence_errors = 0;        // some tree node has no valid division at all
  std::size_t random_division_errors = 0;  // a single random division failed somewhere
  bool qualifies = false;                  // existence error rate < target

  double existence_error_rate() const { return trials ? double(existence_errors) / double(trials) : 0.0; }
  double random_division_error_rate() const {
    return trials ? double(random_division_errors) / double(trials) : 0.0;
  }
};

/// Monte Carlo estimate at a single n; m must be a power of two.
SweepPoint evaluate_sweep_point(double p, std::size_t m, std::size_t n, std::size_t trials, double error_target,
                                std::uint64_t base_seed, SplitRule rule = SplitRule::Strict);

struct SweepResult {
  double p = 0.0;
  std::size_t m = 0;
  SplitRule rule = SplitRule::Strict;
  std::optional<std::size_t> min_n;
  std::vector<SweepPoint> evaluated;  // ascending n
};

/// Smallest grid n whose existence error rate is below error_target, found by
/// doubling the grid index and then bisecting. Trial k uses the same seed at
/// every n, and sampling is file-major, so neighbouring grid points share
/// their random instances up to the extra files.
SweepResult sweep_thresholds(double p, std::size_t m, double error_target, std::size_t trials,
                             std::span<const std::size_t> n_grid, std::uint64_t base_seed,
                             SplitRule rule = SplitRule::Strict);

/// As sweep_thresholds, but throws NotFound when no grid point qualifies.
std::size_t sweep_min_n(double p, std::size_t m, double error_target, std::size_t trials,
                        std::span<const std::size_t> n_grid, std::uint64_t base_seed,
                        SplitRule rule = SplitRule::Strict);

/// Closed-form expressions exposed to the grid tools.
enum class Formula {
  SplitViolation,
  SplitViolationExact,
  TreeError,
  TreeErrorUnion,
  FileCoverMiss,
  FileCoverMissExact,
  PartitionError,
  NoValidDivision,
  ExistenceError,
};

std::string formula_id(Formula f);
std::optional<Formula> parse_formula(const std::string& id);
std::vector<Formula> all_formulas();

struct FormulaParams {
  std::size_t n = 0;
  std::size_t m = 0;  // users (tree, cover, partition, existence)
  std::size_t d = 0;  // group size (split violation, no valid division)
  double p = 0.0;
  double w = 0.0;
  double v = 0.0;
  double z = 1.0;
};

struct BoundRow {
  Formula formula{};
  FormulaParams params;
  BoundValue value;
};

BoundRow evaluate_formula(Formula f, const FormulaParams& params);

struct VerifyPoint {
  Formula formula{};  // Monte Carlo-checkable formulas only
  FormulaParams params;
  std::size_t samples = 10000;
};

struct VerifyRow {
  VerifyPoint point;
  std::size_t events = 0;
  double mc_estimate = 0.0;
  double std_error = 0.0;
  long double closed_form = 0.0L;
  bool exact = false;  // compared two-sided against an exact probability
  bool pass = false;
};

/// Monte Carlo frequency of the event behind point.formula against its
/// closed form. Bounds pass when mc <= value + 3 SE (SE from the Monte Carlo
/// frequency); exact formulas pass when |mc - value| <= 3 SE (SE from the
/// exact probability).
VerifyRow verify_point(const VerifyPoint& point, std::uint64_t seed);
std::vector<VerifyRow> verify_bounds(std::span<const VerifyPoint> grid, std::uint64_t base_seed);

/// The grid checked by the acceptance suite and `gtx verify` by default.
std::vector<VerifyPoint> default_verification_grid(std::size_t samples = 10000);

std::string to_string(SchedulerKind kind);
std::optional<SchedulerKind> parse_scheduler(const std::string& s);
std::string to_string(FailureKind kind);
std::string to_string(SplitRule rule);
std::optional<SplitRule> parse_split_rule(const std::string& s);

void write_trials_csv(std::ostream& out, std::span<const TrialReport> reports, bool include_timing = false);
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_bounds_csv(std::ostream& out, std::span<const BoundRow> rows);
void write_verify_csv(std::ostream& out, std::span<const VerifyRow> rows);

}  // namespace gtx
