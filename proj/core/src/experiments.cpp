#include "gtx/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include "gtx/division.hpp"
#include "gtx/errors.hpp"
#include "parallel.hpp"

namespace gtx {
namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::vector<UserId> iota_users(std::size_t m) {
  std::vector<UserId> users(m);
  for (UserId u = 0; u < m; ++u) users[u] = u;
  return users;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string fmt_long(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

}  // namespace

ResolvedTrialParams resolve(const TrialConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  ResolvedTrialParams r;
  r.n = config.n;
  if (config.regime) {
    r.m = regime_user_count(*config.regime, config.n);
    r.p = 1.0 - pick_q(*config.regime);
  } else {
    r.m = config.m;
    r.p = config.p;
  }
  if (!(r.p >= 0.0 && r.p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (r.m < 1) throw std::invalid_argument("m must be >= 1");

  switch (config.scheduler) {
    case SchedulerKind::PadTreeSplit:
      if (r.m < 2) throw std::invalid_argument("PadTreeSplit needs m >= 2");
      break;
    case SchedulerKind::PartitionTreeSplit:
      if (config.group_size) {
        r.plan = plan_partition_for_group(*config.group_size);
      } else if (config.regime && !std::holds_alternative<LogRegime>(config.regime->kind)) {
        r.plan = plan_partition(*config.regime, r.n);
      } else {
        throw std::invalid_argument("PartitionTreeSplit needs a group size or a linear/polynomial regime");
      }
      if (r.plan->group_size > r.m) throw std::invalid_argument("partition group size exceeds m");
      break;
    case SchedulerKind::Oracle:
      if (r.m > config.oracle_limits.max_users || r.n > config.oracle_limits.max_files) {
        throw std::invalid_argument("instance size exceeds the oracle limits");
      }
      break;
    case SchedulerKind::Greedy:
      break;
  }
  return r;
}

std::vector<TrialReport> run_trials(const TrialConfig& config) {
  const ResolvedTrialParams params = resolve(config);
  std::vector<TrialReport> reports(config.trials);
  detail::parallel_for(config.trials, [&](std::size_t k) {
    const auto start = std::chrono::steady_clock::now();
    TrialReport& rep = reports[k];
    rep.trial = k;
    rep.seed = derive_seed(config.base_seed, k);
    rep.n = params.n;
    rep.m = params.m;
    rep.p = params.p;

    Rng sampler(rep.seed);
    const Instance inst = sample_instance(params.n, params.m, params.p, sampler);
    Rng rng(derive_seed(rep.seed, 1));
    const auto users = iota_users(params.m);

    Schedule schedule;
    switch (config.scheduler) {
      case SchedulerKind::PadTreeSplit:
        try {
          schedule = pad_and_tree_split(inst, config.division_policy, rng).schedule;
        } catch (const NoValidDivision&) {
          rep.failure_kind = FailureKind::NoValidDivision;
        }
        break;
      case SchedulerKind::PartitionTreeSplit: {
        auto result = partition_tree_split(inst, *params.plan, config.target, config.division_policy, rng);
        schedule = std::move(result.schedule);
        for (const auto& g : result.groups) {
          if (g.failure == GroupFailure::None) continue;
          ++rep.failed_groups;
          if (!rep.failure_kind) {
            rep.failure_kind =
                g.failure == GroupFailure::NotFileCover ? FailureKind::NotFileCover : FailureKind::NoValidDivision;
          }
        }
        break;
      }
      case SchedulerKind::Greedy:
        schedule = greedy_completion(inst, users).schedule;
        break;
      case SchedulerKind::Oracle:
        schedule = optimal_schedule(inst, config.oracle_limits).schedule;
        break;
    }

    const Instance final_state = apply_schedule(inst, schedule);
    rep.satisfied_count = satisfied_count(final_state, target_set(inst, config.target));
    rep.satisfied_fraction = static_cast<double>(rep.satisfied_count) / static_cast<double>(params.m);
    rep.schedule_length = schedule.size();
    rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return reports;
}

SweepPoint evaluate_sweep_point(double p, std::size_t m, std::size_t n, std::size_t trials, double error_target,
                                std::uint64_t base_seed, SplitRule rule) {
  if (!is_power_of_two(m) || m < 2) throw std::invalid_argument("sweep needs m a power of two >= 2");
  if (trials < 1) throw std::invalid_argument("sweep needs trials >= 1");
  std::vector<char> existence(trials, 0);
  std::vector<char> random_div(trials, 0);
  const auto users = iota_users(m);
  detail::parallel_for(trials, [&](std::size_t k) {
    const std::uint64_t seed = derive_seed(base_seed, k);
    Rng sampler(seed);
    const Instance inst = sample_instance(n, m, p, sampler);
    existence[k] = first_undividable_group(inst, users, rule).has_value();
    Rng rng(derive_seed(seed, 1));
    random_div[k] = random_split_tree_fails(inst, users, rng, rule);
  });
  SweepPoint pt;
  pt.n = n;
  pt.trials = trials;
  for (std::size_t k = 0; k < trials; ++k) {
    pt.existence_errors += existence[k] != 0;
    pt.random_division_errors += random_div[k] != 0;
  }
  pt.qualifies = pt.existence_error_rate() < error_target;
  return pt;
}

SweepResult sweep_thresholds(double p, std::size_t m, double error_target, std::size_t trials,
                             std::span<const std::size_t> n_grid, std::uint64_t base_seed, SplitRule rule) {
  if (!(error_target > 0.0 && error_target < 1.0)) throw std::invalid_argument("error target must lie in (0, 1)");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (n_grid.empty()) throw std::invalid_argument("n grid is empty");
  for (std::size_t k = 1; k < n_grid.size(); ++k) {
    if (n_grid[k] <= n_grid[k - 1]) throw std::invalid_argument("n grid must be strictly ascending");
  }

  std::map<std::size_t, SweepPoint> cache;  // by grid index
  auto eval = [&](std::size_t idx) -> const SweepPoint& {
    auto it = cache.find(idx);
    if (it == cache.end()) {
      it = cache.emplace(idx, evaluate_sweep_point(p, m, n_grid[idx], trials, error_target, base_seed, rule)).first;
    }
    return it->second;
  };

  SweepResult result;
  result.p = p;
  result.m = m;
  result.rule = rule;
  const std::size_t last = n_grid.size() - 1;
  std::optional<std::size_t> hi;
  std::optional<std::size_t> lo_fail;
  for (std::size_t idx = 0, step = 1;; step *= 2) {
    if (eval(idx).qualifies) {
      hi = idx;
      break;
    }
    lo_fail = idx;
    if (idx == last) break;
    idx = std::min(idx + step, last);
  }
  if (hi) {
    std::size_t lo = lo_fail ? *lo_fail : 0;
    if (lo_fail) {
      while (*hi - lo > 1) {
        const std::size_t mid = lo + (*hi - lo) / 2;
        if (eval(mid).qualifies) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
    }
    result.min_n = n_grid[*hi];
  }
  for (auto& [idx, pt] : cache) result.evaluated.push_back(pt);
  return result;
}

std::size_t sweep_min_n(double p, std::size_t m, double error_target, std::size_t trials,
                        std::span<const std::size_t> n_grid, std::uint64_t base_seed, SplitRule rule) {
  const auto result = sweep_thresholds(p, m, error_target, trials, n_grid, base_seed, rule);
  if (!result.min_n) {
    throw NotFound("no grid point reaches an error rate below " + fmt(error_target) + " (p = " + fmt(p) +
                   ", m = " + std::to_string(m) + ")");
  }
  return *result.min_n;
}

std::string formula_id(Formula f) {
  switch (f) {
    case Formula::SplitViolation: return "split_violation";
    case Formula::SplitViolationExact: return "split_violation_exact";
    case Formula::TreeError: return "tree_error";
    case Formula::TreeErrorUnion: return "tree_error_union";
    case Formula::FileCoverMiss: return "file_cover_miss";
    case Formula::FileCoverMissExact: return "file_cover_miss_exact";
    case Formula::PartitionError: return "partition_error";
    case Formula::NoValidDivision: return "no_valid_division";
    case Formula::ExistenceError: return "existence_error";
  }
  return "unknown";
}

std::vector<Formula> all_formulas() {
  return {Formula::SplitViolation, Formula::SplitViolationExact, Formula::TreeError,
          Formula::TreeErrorUnion, Formula::FileCoverMiss,       Formula::FileCoverMissExact,
          Formula::PartitionError, Formula::NoValidDivision,     Formula::ExistenceError};
}

std::optional<Formula> parse_formula(const std::string& id) {
  for (Formula f : all_formulas()) {
    if (formula_id(f) == id) return f;
  }
  return std::nullopt;
}

BoundRow evaluate_formula(Formula f, const FormulaParams& params) {
  const long double p = params.p;
  const long double q = 1.0L - p;
  BoundRow row{f, params, {}};
  switch (f) {
    case Formula::SplitViolation:
      row.value = p_split_violation(params.n, params.d, q);
      break;
    case Formula::SplitViolationExact: {
      const long double v = p_split_violation_exact(params.n, params.d, q);
      row.value = {v, false, v > 1.0L};
      break;
    }
    case Formula::TreeError:
      row.value = tree_error_bound(params.n, params.m, q);
      break;
    case Formula::TreeErrorUnion:
      row.value = tree_error_union_bound(params.n, params.m, q);
      break;
    case Formula::FileCoverMiss: {
      const long double v = p_not_file_cover(params.n, params.m, q).bound;
      row.value = {v, true, v > 1.0L};
      break;
    }
    case Formula::FileCoverMissExact: {
      const long double v = p_not_file_cover(params.n, params.m, q).exact;
      row.value = {v, false, v > 1.0L};
      break;
    }
    case Formula::PartitionError:
      row.value = partition_error_bound(params.n, params.m, params.w, params.v, q, params.z);
      break;
    case Formula::NoValidDivision:
      row.value = p_no_valid_division_bound(params.n, params.d, p);
      break;
    case Formula::ExistenceError:
      row.value = existence_error_bound(params.n, params.m, p);
      break;
  }
  return row;
}

VerifyRow verify_point(const VerifyPoint& point, std::uint64_t seed) {
  const auto& prm = point.params;
  if (point.samples < 1) throw std::invalid_argument("verification needs at least one sample");
  if (point.formula == Formula::PartitionError) {
    throw std::invalid_argument("partition_error has no Monte Carlo event in this harness");
  }
  const bool by_group = point.formula == Formula::SplitViolation || point.formula == Formula::SplitViolationExact ||
                        point.formula == Formula::NoValidDivision;
  const std::size_t users = by_group ? prm.d : prm.m;
  const auto group = iota_users(users);

  std::vector<char> hit(point.samples, 0);
  detail::parallel_for(point.samples, [&](std::size_t s) {
    Rng rng(derive_seed(seed, s));
    const Instance inst = sample_instance(prm.n, users, prm.p, rng);
    const std::span<const UserId> all(group);
    bool event = false;
    switch (point.formula) {
      case Formula::SplitViolation:
      case Formula::SplitViolationExact:
        // Users are exchangeable, so the fixed halves are a uniformly random division.
        event = !obeys_splitting_condition(inst, all.first(users / 2), all.subspan(users / 2));
        break;
      case Formula::TreeError:
      case Formula::TreeErrorUnion:
        event = random_split_tree_fails(inst, all, rng);
        break;
      case Formula::FileCoverMiss:
      case Formula::FileCoverMissExact:
        event = achievable_universe(inst) != FileSet::full(prm.n);
        break;
      case Formula::NoValidDivision:
        event = !has_valid_division(inst, all);
        break;
      case Formula::ExistenceError:
        event = first_undividable_group(inst, all).has_value();
        break;
      case Formula::PartitionError:
        break;
    }
    hit[s] = event;
  });

  VerifyRow row;
  row.point = point;
  for (char h : hit) row.events += h != 0;
  const double samples = static_cast<double>(point.samples);
  row.mc_estimate = static_cast<double>(row.events) / samples;
  const BoundRow closed = evaluate_formula(point.formula, prm);
  row.closed_form = closed.value.value;
  row.exact = !closed.value.is_upper_bound;
  if (row.exact) {
    const double pr = static_cast<double>(row.closed_form);
    row.std_error = std::sqrt(pr * (1.0 - pr) / samples);
    row.pass = std::abs(row.mc_estimate - pr) <= 3.0 * row.std_error + 1e-12;
  } else {
    row.std_error = std::sqrt(row.mc_estimate * (1.0 - row.mc_estimate) / samples);
    row.pass = row.mc_estimate <= static_cast<double>(closed.value.clamped_value()) + 3.0 * row.std_error + 1e-12;
  }
  return row;
}

std::vector<VerifyRow> verify_bounds(std::span<const VerifyPoint> grid, std::uint64_t base_seed) {
  std::vector<VerifyRow> rows;
  rows.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) rows.push_back(verify_point(grid[k], derive_seed(base_seed, k)));
  return rows;
}

std::vector<VerifyPoint> default_verification_grid(std::size_t samples) {
  std::vector<VerifyPoint> grid;
  auto add = [&](Formula f, std::size_t n, std::size_t m, std::size_t d, double p) {
    FormulaParams prm;
    prm.n = n;
    prm.m = m;
    prm.d = d;
    prm.p = p;
    grid.push_back({f, prm, samples});
  };

  // One random division of d users.
  for (std::size_t d : {2, 4, 8}) {
    for (double p : {0.1, 0.3, 0.5}) {
      for (std::size_t n : {1, 10}) {
        add(Formula::SplitViolation, n, 0, d, p);
        add(Formula::SplitViolationExact, n, 0, d, p);
      }
    }
  }
  // Random-division tree on m users, q inside the log-regime window for
  // c = m / ln n (the regime the single-term bound is stated for).
  for (std::size_t m : {4, 8, 16}) {
    for (std::size_t n : {200, 1000}) {
      const double c = static_cast<double>(m) / std::log(static_cast<double>(n));
      const double q = pick_q({LogRegime{c}, QMode::APosteriori});
      add(Formula::TreeError, n, m, 0, 1.0 - q);
    }
  }
  // Full per-level union bound, any q.
  for (std::size_t m : {4, 8}) {
    for (double p : {0.1, 0.3, 0.5}) add(Formula::TreeErrorUnion, 30, m, 0, p);
  }
  // Group of m users misses a file.
  for (std::size_t m : {2, 4, 8}) {
    for (double p : {0.2, 0.5}) {
      add(Formula::FileCoverMiss, 3, m, 0, p);
      add(Formula::FileCoverMissExact, 3, m, 0, p);
      add(Formula::FileCoverMiss, 20, m, 0, p);
      add(Formula::FileCoverMissExact, 20, m, 0, p);
    }
  }
  // No balanced division of d users obeys the splitting condition.
  for (std::size_t d : {2, 4, 6, 8}) {
    for (double p : {0.1, 0.25, 0.4}) add(Formula::NoValidDivision, 60, 0, d, p);
  }
  // Some node of an m-user tree cannot be divided at all.
  for (std::size_t m : {4, 8, 16}) {
    for (double p : {0.1, 0.25, 0.4}) add(Formula::ExistenceError, 60, m, 0, p);
  }
  return grid;
}

std::string to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::PadTreeSplit: return "pad-tree-split";
    case SchedulerKind::PartitionTreeSplit: return "partition-tree-split";
    case SchedulerKind::Greedy: return "greedy";
    case SchedulerKind::Oracle: return "oracle";
  }
  return "unknown";
}

std::optional<SchedulerKind> parse_scheduler(const std::string& s) {
  for (auto k : {SchedulerKind::PadTreeSplit, SchedulerKind::PartitionTreeSplit, SchedulerKind::Greedy,
                 SchedulerKind::Oracle}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string to_string(FailureKind kind) {
  return kind == FailureKind::NoValidDivision ? "no_valid_division" : "not_file_cover";
}

std::string to_string(SplitRule rule) { return rule == SplitRule::Strict ? "strict" : "allow-equal"; }

std::optional<SplitRule> parse_split_rule(const std::string& s) {
  if (s == "strict") return SplitRule::Strict;
  if (s == "allow-equal") return SplitRule::AllowEqual;
  return std::nullopt;
}

void write_trials_csv(std::ostream& out, std::span<const TrialReport> reports, bool include_timing) {
  out << "trial,seed,n,m,p,satisfied_count,satisfied_fraction,failure_kind,failed_groups,schedule_length";
  if (include_timing) out << ",wall_time_seconds";
  out << '\n';
  for (const auto& r : reports) {
    out << r.trial << ',' << r.seed << ',' << r.n << ',' << r.m << ',' << fmt(r.p) << ',' << r.satisfied_count << ','
        << fmt(r.satisfied_fraction) << ',' << (r.failure_kind ? to_string(*r.failure_kind) : "") << ','
        << r.failed_groups << ',' << r.schedule_length;
    if (include_timing) out << ',' << fmt(r.wall_time_seconds);
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "p,m,split_rule,n,trials,existence_errors,existence_error_rate,random_division_errors,"
         "random_division_error_rate,qualifies\n";
  for (const auto& pt : result.evaluated) {
    out << fmt(result.p) << ',' << result.m << ',' << to_string(result.rule) << ',' << pt.n << ',' << pt.trials << ',' << pt.existence_errors << ','
        << fmt(pt.existence_error_rate()) << ',' << pt.random_division_errors << ','
        << fmt(pt.random_division_error_rate()) << ',' << (pt.qualifies ? 1 : 0) << '\n';
  }
}

namespace {

bool uses_group_size(Formula f) {
  return f == Formula::SplitViolation || f == Formula::SplitViolationExact || f == Formula::NoValidDivision;
}

void write_params(std::ostream& out, Formula f, const FormulaParams& prm) {
  out << formula_id(f) << ',' << prm.n << ',';
  if (!uses_group_size(f)) out << prm.m;
  out << ',';
  if (uses_group_size(f)) out << prm.d;
  out << ',' << fmt(prm.p) << ',' << fmt(1.0 - prm.p);
}

}  // namespace

void write_bounds_csv(std::ostream& out, std::span<const BoundRow> rows) {
  out << "formula_id,n,m,d,p,q,w,v,z,raw_value,clamped_value,is_upper_bound\n";
  for (const auto& r : rows) {
    write_params(out, r.formula, r.params);
    if (r.formula == Formula::PartitionError) {
      out << ',' << fmt(r.params.w) << ',' << fmt(r.params.v) << ',' << fmt(r.params.z);
    } else {
      out << ",,,";
    }
    out << ',' << fmt_long(r.value.value) << ',' << fmt_long(r.value.clamped_value()) << ','
        << (r.value.is_upper_bound ? 1 : 0) << '\n';
  }
}

void write_verify_csv(std::ostream& out, std::span<const VerifyRow> rows) {
  out << "formula_id,n,m,d,p,q,samples,events,mc_estimate,closed_form,std_error,comparison,pass\n";
  for (const auto& r : rows) {
    write_params(out, r.point.formula, r.point.params);
    out << ',' << r.point.samples << ',' << r.events << ',' << fmt(r.mc_estimate) << ',' << fmt_long(r.closed_form)
        << ',' << fmt(r.std_error) << ',' << (r.exact ? "exact" : "upper_bound") << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

}  // namespace gtx
