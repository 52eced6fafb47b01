// gtx: command-line front end for the give-and-take exchange library.
//
//   gtx simulate  seeded scheduler trials            (CSV)
//   gtx sweep     minimum n for a target error rate  (CSV)
//   gtx bounds    closed-form grid                   (CSV)
//   gtx verify    Monte Carlo check of the bounds    (CSV)
//   gtx oracle    exact optimum of a JSON instance   (JSON)
//   gtx schedule  run one scheduler on a JSON instance (JSON)
//
// Exit codes: 0 success, 2 validation error, 3 no qualifying grid point.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gtx/acquisition.hpp"
#include "gtx/errors.hpp"
#include "gtx/experiments.hpp"
#include "gtx/json_io.hpp"
#include "gtx/schedulers.hpp"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNotFound = 3;

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

gtx::DivisionPolicy parse_policy(const std::string& s) {
  if (s == "exhaustive") return gtx::Exhaustive{};
  const std::string prefix = "random-retry";
  if (s.rfind(prefix, 0) == 0) {
    gtx::RandomRetry retry;
    if (s.size() > prefix.size()) {
      if (s[prefix.size()] != ':') throw ValidationError("policy must be exhaustive or random-retry[:K]");
      try {
        retry.max_attempts = std::stoul(s.substr(prefix.size() + 1));
      } catch (const std::exception&) {
        throw ValidationError("random-retry attempt count is not a number");
      }
      if (retry.max_attempts < 1) throw ValidationError("random-retry needs at least one attempt");
    }
    return retry;
  }
  throw ValidationError("unknown division policy '" + s + "'");
}

gtx::Target parse_target(const std::string& s) {
  if (s == "F") return gtx::Target::Achievable;
  if (s == "T") return gtx::Target::Complete;
  throw ValidationError("target must be F or T");
}

gtx::RegimeSpec parse_regime(const json& j) {
  const std::string kind = j.value("kind", "");
  gtx::RegimeSpec spec;
  spec.mode = j.value("mode", "a-posteriori") == "a-priori" ? gtx::QMode::APriori : gtx::QMode::APosteriori;
  if (kind == "log") {
    spec.kind = gtx::LogRegime{j.value("c", 1.0)};
  } else if (kind == "linear") {
    spec.kind = gtx::LinearRegime{j.value("alpha", 1.0), j.value("w", 1.0), j.value("v", 1.0)};
  } else if (kind == "poly") {
    spec.kind = gtx::PolyRegime{j.value("alpha", 1.0), j.value("z", 2.0), j.value("w", 1.0), j.value("v", 1.0)};
  } else {
    throw ValidationError("regime kind must be log, linear or poly");
  }
  return spec;
}

json read_json_file(const std::string& path) {
  std::ifstream in_file;
  std::istream* in = &std::cin;
  if (path != "-") {
    in_file.open(path);
    if (!in_file) throw ValidationError("cannot open " + path);
    in = &in_file;
  }
  try {
    return json::parse(*in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

/// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::uint64_t seed_with_env(std::uint64_t seed) {
  if (const char* env = std::getenv("GTX_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError("GTX_SEED is not an unsigned integer");
    }
  }
  return seed;
}

std::vector<std::size_t> parse_size_list(const std::vector<std::string>& items) {
  std::vector<std::size_t> out;
  for (const auto& s : items) {
    try {
      out.push_back(std::stoul(s));
    } catch (const std::exception&) {
      throw ValidationError("expected an unsigned integer, got '" + s + "'");
    }
  }
  return out;
}

// Options shared by simulate; every flag overrides the config file.
struct SimulateOptions {
  std::string config_path;
  std::size_t n = 0, m = 0, trials = 1, group_size = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string scheduler = "pad-tree-split", policy = "random-retry", target = "F", regime, out;
  double c = 1.0, alpha = 1.0, w = 1.0, v = 1.0, z = 2.0;
  bool timing = false;
};

gtx::TrialConfig build_trial_config(const SimulateOptions& o, const CLI::App& cmd) {
  json cfg = json::object();
  if (!o.config_path.empty()) cfg = read_json_file(o.config_path);
  auto given = [&](const char* flag) { return cmd.count(flag) > 0; };

  gtx::TrialConfig config;
  try {
    config.n = given("--n") ? o.n : cfg.value("n", o.n);
    config.m = given("--m") ? o.m : cfg.value("m", o.m);
    config.p = given("--p") ? o.p : cfg.value("p", o.p);
    config.trials = given("--trials") ? o.trials : cfg.value("trials", o.trials);
    config.base_seed = given("--seed") ? o.seed : cfg.value("seed", o.seed);
    const std::string sched = given("--scheduler") ? o.scheduler : cfg.value("scheduler", o.scheduler);
    const std::string policy = given("--policy") ? o.policy : cfg.value("policy", o.policy);
    const std::string target = given("--target") ? o.target : cfg.value("target", o.target);
    const std::size_t group = given("--group-size") ? o.group_size : cfg.value("group_size", o.group_size);

    const auto kind = gtx::parse_scheduler(sched);
    if (!kind) throw ValidationError("unknown scheduler '" + sched + "'");
    config.scheduler = *kind;
    config.division_policy = parse_policy(policy);
    config.target = parse_target(target);
    if (group != 0) config.group_size = group;

    if (given("--regime")) {
      json r{{"kind", o.regime}, {"c", o.c}, {"alpha", o.alpha}, {"w", o.w}, {"v", o.v}, {"z", o.z}};
      config.regime = parse_regime(r);
    } else if (cfg.contains("regime")) {
      config.regime = parse_regime(cfg["regime"]);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
  config.base_seed = seed_with_env(config.base_seed);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Give-and-take file exchange: schedulers, bounds and Monte Carlo experiments"};
  app.require_subcommand(1);

  // simulate
  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run seeded scheduler trials; CSV per trial");
  simulate->add_option("--config", sim.config_path, "JSON config file (flags override its keys)");
  simulate->add_option("--n", sim.n, "Number of files");
  simulate->add_option("--m", sim.m, "Number of users");
  simulate->add_option("--p", sim.p, "Per-file pickup probability");
  simulate->add_option("--trials", sim.trials, "Number of trials");
  simulate->add_option("--seed", sim.seed, "Base seed (GTX_SEED overrides)");
  simulate->add_option("--scheduler", sim.scheduler, "pad-tree-split | partition-tree-split | greedy | oracle");
  simulate->add_option("--policy", sim.policy, "random-retry[:K] | exhaustive");
  simulate->add_option("--target", sim.target, "Satisfaction target F (achievable) or T (complete)");
  simulate->add_option("--group-size", sim.group_size, "Partition group size (overrides the regime's)");
  simulate->add_option("--regime", sim.regime, "log | linear | poly (sets m and p from n)");
  simulate->add_option("--c", sim.c, "log regime: m = c ln n");
  simulate->add_option("--alpha", sim.alpha, "linear/poly regime: m = alpha n^z");
  simulate->add_option("--w", sim.w, "group size factor (w ln n)");
  simulate->add_option("--v", sim.v, "TreeSplit subset factor (v ln n)");
  simulate->add_option("--z", sim.z, "poly regime exponent");
  simulate->add_option("--out", sim.out, "Output path (default stdout)");
  simulate->add_flag("--timing", sim.timing, "Append wall_time_seconds (breaks byte-identical output)");

  // sweep
  double sweep_p = 0.1, error_target = 0.01;
  std::size_t sweep_m = 1024, sweep_trials = 1000, n_min = 2, n_max = 512, n_step = 1;
  std::uint64_t sweep_seed = 0;
  std::string sweep_out, split_rule = "strict";
  auto* sweep = app.add_subcommand("sweep", "Minimum n with error rate below the target; CSV per evaluated n");
  sweep->add_option("--p", sweep_p, "Per-file pickup probability");
  sweep->add_option("--m", sweep_m, "Number of users (power of two)");
  sweep->add_option("--trials", sweep_trials, "Trials per grid point");
  sweep->add_option("--error-target", error_target, "Error rate threshold in (0, 1)");
  sweep->add_option("--n-min", n_min, "Smallest grid n");
  sweep->add_option("--n-max", n_max, "Largest grid n");
  sweep->add_option("--n-step", n_step, "Grid spacing");
  sweep->add_option("--seed", sweep_seed, "Base seed (GTX_SEED overrides)");
  sweep->add_option("--split-rule", split_rule, "strict | allow-equal (equal half unions count as divisible)");
  sweep->add_option("--out", sweep_out, "Output path (default stdout)");

  // bounds
  std::vector<std::string> formulas, b_n, b_m, b_d;
  std::vector<double> b_p;
  double b_w = 1.0, b_v = 1.0, b_z = 1.0;
  std::string bounds_out;
  auto* bounds = app.add_subcommand("bounds", "Evaluate closed forms over a parameter grid; CSV");
  bounds->add_option("--formula", formulas, "Formula id(s); default all")->delimiter(',');
  bounds->add_option("--n", b_n, "File counts")->delimiter(',')->required();
  bounds->add_option("--m", b_m, "User counts")->delimiter(',');
  bounds->add_option("--d", b_d, "Group sizes")->delimiter(',');
  bounds->add_option("--p", b_p, "Pickup probabilities")->delimiter(',')->required();
  bounds->add_option("--w", b_w, "partition_error: w");
  bounds->add_option("--v", b_v, "partition_error: v");
  bounds->add_option("--z", b_z, "partition_error: z");
  bounds->add_option("--out", bounds_out, "Output path (default stdout)");

  // verify
  std::size_t samples = 10000;
  std::uint64_t verify_seed = 0;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Monte Carlo check of the closed forms on the default grid; CSV");
  verify->add_option("--samples", samples, "Samples per grid point");
  verify->add_option("--seed", verify_seed, "Base seed (GTX_SEED overrides)");
  verify->add_option("--out", verify_out, "Output path (default stdout)");

  // oracle
  std::string oracle_instance;
  gtx::OracleLimits limits;
  auto* oracle = app.add_subcommand("oracle", "Exact optimum for a tiny JSON instance");
  oracle->add_option("--instance", oracle_instance, "Instance JSON path ('-' for stdin)")->required();
  oracle->add_option("--max-users", limits.max_users, "Search guard on m");
  oracle->add_option("--max-files", limits.max_files, "Search guard on n");

  // schedule
  std::string sched_instance, sched_name = "pad-tree-split", sched_policy = "exhaustive", sched_target = "F";
  std::size_t sched_group = 0;
  std::uint64_t sched_seed = 0;
  auto* schedule = app.add_subcommand("schedule", "Run one scheduler on a JSON instance; JSON result");
  schedule->add_option("--instance", sched_instance, "Instance JSON path ('-' for stdin)")->required();
  schedule->add_option("--scheduler", sched_name, "pad-tree-split | partition-tree-split | greedy | oracle");
  schedule->add_option("--policy", sched_policy, "random-retry[:K] | exhaustive");
  schedule->add_option("--target", sched_target, "F or T (partition-tree-split)");
  schedule->add_option("--group-size", sched_group, "partition-tree-split group size");
  schedule->add_option("--seed", sched_seed, "Seed for random divisions (GTX_SEED overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*simulate) {
      const auto config = build_trial_config(sim, *simulate);
      const auto reports = gtx::run_trials(config);
      Output out(sim.out);
      gtx::write_trials_csv(out.stream(), reports, sim.timing);
    } else if (*sweep) {
      if (n_step < 1 || n_min > n_max) throw ValidationError("n grid needs n-min <= n-max and n-step >= 1");
      std::vector<std::size_t> grid;
      for (std::size_t n = n_min; n <= n_max; n += n_step) grid.push_back(n);
      const auto rule = gtx::parse_split_rule(split_rule);
      if (!rule) throw ValidationError("split rule must be strict or allow-equal");
      const auto result = gtx::sweep_thresholds(sweep_p, sweep_m, error_target, sweep_trials, grid,
                                                seed_with_env(sweep_seed), *rule);
      Output out(sweep_out);
      gtx::write_sweep_csv(out.stream(), result);
      if (!result.min_n) {
        std::cerr << "no grid point reached an error rate below " << error_target << "\n";
        return kExitNotFound;
      }
      std::cerr << "min_n=" << *result.min_n << "\n";
    } else if (*bounds) {
      std::vector<gtx::Formula> chosen;
      if (formulas.empty()) {
        chosen = gtx::all_formulas();
      } else {
        for (const auto& id : formulas) {
          const auto f = gtx::parse_formula(id);
          if (!f) throw ValidationError("unknown formula '" + id + "'");
          chosen.push_back(*f);
        }
      }
      const auto ns = parse_size_list(b_n);
      const auto ms = parse_size_list(b_m);
      const auto ds = parse_size_list(b_d);
      std::vector<gtx::BoundRow> rows;
      for (gtx::Formula f : chosen) {
        const bool by_group = f == gtx::Formula::SplitViolation || f == gtx::Formula::SplitViolationExact ||
                              f == gtx::Formula::NoValidDivision;
        const auto& sizes = by_group ? ds : ms;
        if (sizes.empty()) {
          if (!formulas.empty()) throw ValidationError(gtx::formula_id(f) + (by_group ? " needs --d" : " needs --m"));
          continue;
        }
        for (std::size_t n : ns) {
          for (std::size_t size : sizes) {
            for (double p : b_p) {
              gtx::FormulaParams prm;
              prm.n = n;
              (by_group ? prm.d : prm.m) = size;
              prm.p = p;
              prm.w = b_w;
              prm.v = b_v;
              prm.z = b_z;
              rows.push_back(gtx::evaluate_formula(f, prm));
            }
          }
        }
      }
      Output out(bounds_out);
      gtx::write_bounds_csv(out.stream(), rows);
    } else if (*verify) {
      const auto grid = gtx::default_verification_grid(samples);
      const auto rows = gtx::verify_bounds(grid, seed_with_env(verify_seed));
      Output out(verify_out);
      gtx::write_verify_csv(out.stream(), rows);
    } else if (*oracle) {
      const auto inst = gtx::instance_from_json(read_json_file(oracle_instance));
      const auto result = gtx::optimal_schedule(inst, limits);
      std::cout << json{{"satisfied", result.satisfied}, {"schedule", gtx::to_json(result.schedule)}}.dump() << "\n";
    } else if (*schedule) {
      const auto inst = gtx::instance_from_json(read_json_file(sched_instance));
      const auto kind = gtx::parse_scheduler(sched_name);
      if (!kind) throw ValidationError("unknown scheduler '" + sched_name + "'");
      const auto policy = parse_policy(sched_policy);
      const auto target = parse_target(sched_target);
      gtx::Rng rng(seed_with_env(sched_seed));
      json result;
      switch (*kind) {
        case gtx::SchedulerKind::PadTreeSplit: {
          try {
            const auto r = gtx::pad_and_tree_split(inst, policy, rng);
            result = {{"schedule", gtx::to_json(r.schedule)}, {"satisfied", r.satisfied}, {"kept", r.kept}};
            if (r.tree) result["split_tree"] = gtx::to_json(*r.tree);
          } catch (const gtx::NoValidDivision& e) {
            // A failed tree is an outcome, not a usage error.
            result = {{"failure", "no_valid_division"}, {"group", e.group()}, {"level", e.level()}};
          }
          break;
        }
        case gtx::SchedulerKind::PartitionTreeSplit: {
          if (sched_group == 0) throw ValidationError("partition-tree-split needs --group-size");
          const auto r = gtx::partition_tree_split(inst, gtx::plan_partition_for_group(sched_group), target,
                                                   policy, rng);
          result = {{"schedule", gtx::to_json(r.schedule)}, {"satisfied", r.satisfied}, {"unscheduled", r.unscheduled}};
          break;
        }
        case gtx::SchedulerKind::Greedy: {
          std::vector<gtx::UserId> users(inst.m());
          for (gtx::UserId u = 0; u < inst.m(); ++u) users[u] = u;
          const auto r = gtx::greedy_completion(inst, users);
          result = {{"schedule", gtx::to_json(r.schedule)}, {"satisfied", r.satisfied}};
          break;
        }
        case gtx::SchedulerKind::Oracle: {
          const auto r = gtx::optimal_schedule(inst);
          result = {{"schedule", gtx::to_json(r.schedule)}, {"satisfied_count", r.satisfied}};
          break;
        }
      }
      std::cout << result.dump() << "\n";
    }
  } catch (const gtx::NotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotFound;
  } catch (const gtx::NoValidDivision& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const gtx::EmptyWindow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const gtx::InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
