#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teamcut/eval.hpp"
#include "teamcut/io.hpp"
#include "teamcut/speedups.hpp"

namespace teamcut::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitIterationLimit = 3;

struct RunConfig {
  // shared
  std::string instance_path;
  std::optional<double> alpha;   ///< exactly one of alpha / lambda
  std::optional<double> lambda;
  std::uint64_t seed = 1;
  std::string out_path;

  // solve
  Algorithm algorithm = Algorithm::RPipageL2;  ///< the practical default
  std::optional<double> sparsify_p;
  bool compact = false;
  int supernode_size = 0;  ///< 0: let the partitioner decide
  int repetitions = 1;
  std::string assignment_out;
  std::string lp_dump_path;

  // generate
  std::string generator;  ///< synth-tf | company
  int gen_nodes = 0;      ///< 0: generator default
  int gen_blocks = 0;
  double gen_switch_probability = -1.0;
  double gen_capacity_factor = -1.0;
  std::string initial_assignment_out;

  // sweep
  std::vector<double> alphas;
  std::vector<Algorithm> algorithms;

  // evaluate
  std::vector<std::string> assignment_paths;
  std::string rankings_csv;
  std::string friends_csv;
};

namespace detail {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline Instance resolve_weight(Instance inst, const RunConfig& config) {
  if (config.alpha && config.lambda)
    throw std::invalid_argument("pass either --alpha or --lambda, not both");
  if (config.alpha) return inst.with_alpha_value(*config.alpha);
  if (config.lambda) return inst.with_lambda(*config.lambda);
  return inst;
}

inline std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> echo;
  auto put = [&](const std::string& k, const std::string& v) { echo.push_back({k, v}); };
  if (!config.instance_path.empty()) put("instance", config.instance_path);
  if (config.alpha) put("alpha", io::detail::format_double(*config.alpha));
  if (config.lambda) put("lambda", io::detail::format_double(*config.lambda));
  if (config.sparsify_p) put("sparsify_p", io::detail::format_double(*config.sparsify_p));
  if (config.compact) put("compact", "true");
  if (config.supernode_size > 0) put("supernode_size", std::to_string(config.supernode_size));
  put("seed", std::to_string(config.seed));
  return echo;
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double population_std(const std::vector<double>& v) {
  const double mean = mean_of(v);
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return std::sqrt(sq / static_cast<double>(v.size()));
}

}  // namespace detail

/// Load, apply speedups, relax, round, evaluate, write the report.
/// Randomized algorithms honor `repetitions`; the best assignment is kept and
/// the per-seed objective values land in the report together with the
/// 0.75 * L2(y*) threshold when applicable.
inline int cmd_solve(const RunConfig& config) {
  detail::Timer total;
  io::SolveReport report;
  report.algorithm = to_string(config.algorithm);
  report.config = detail::config_echo(config);
  report.seed = config.seed;
  report.repetitions = config.repetitions;
  if (config.repetitions < 1) {
    std::fprintf(stderr, "solve: repetitions must be >= 1\n");
    return kExitUsage;
  }

  try {
    detail::Timer load_timer;
    const Instance original = detail::resolve_weight(io::load_instance(config.instance_path), config);
    report.timings_seconds.push_back({"load", load_timer.seconds()});

    detail::Timer speedup_timer;
    Instance solve_instance = original;
    if (config.sparsify_p) {
      solve_instance = sparsify(original, *config.sparsify_p, Rng(config.seed).split(0xace).next_u64());
      report.notes.push_back("sparsify kept " + std::to_string(solve_instance.edges().size()) + " of " +
                             std::to_string(original.edges().size()) + " conflict edges");
    }
    std::vector<Supernode> partition;
    if (config.compact) partition = compact_partition(solve_instance, config.supernode_size);
    report.timings_seconds.push_back({"speedups", speedup_timer.seconds()});

    if (!config.lp_dump_path.empty() &&
        (config.algorithm == Algorithm::PipageL1 || config.algorithm == Algorithm::RPipageL2)) {
      const RelaxationKind kind =
          config.algorithm == Algorithm::PipageL1 ? RelaxationKind::L1 : RelaxationKind::L2;
      std::ostringstream dump;
      write_lp_format(build_program(solve_instance, kind), solve_instance, dump);
      io::detail::atomic_write(config.lp_dump_path, dump.str());
    }

    // relax once, round per repetition
    std::optional<FractionalSolution> fractional;
    detail::Timer relax_timer;
    if (config.algorithm == Algorithm::PipageL1 || config.algorithm == Algorithm::RPipageL2) {
      const RelaxationKind kind =
          config.algorithm == Algorithm::PipageL1 ? RelaxationKind::L1 : RelaxationKind::L2;
      LPResult lp;
      if (config.compact) {
        CompactSolveResult compact = compact_solve(solve_instance, partition, kind);
        lp = std::move(compact.super_result);
        if (lp.status == LPStatus::Optimal) {
          fractional = std::move(compact.solution);
          lp.objective_value = eval_relaxation(solve_instance, kind, *fractional);
        }
        report.notes.push_back("compaction-ignored conflict weight " +
                               io::detail::format_double(compact.ignored_conflict_weight));
        report.metrics.push_back({"supernodes", static_cast<double>(partition.size())});
      } else {
        lp = solve_relaxation(solve_instance, kind);
        if (lp.status == LPStatus::Optimal) fractional = lp.solution;
      }
      if (lp.status == LPStatus::IterationLimit) {
        std::fprintf(stderr, "solve: relaxation hit the iteration limit; retry with --sparsify or --compact\n");
        return kExitIterationLimit;
      }
      report.lp_value = lp.objective_value;
      report.metrics.push_back({"lp_iterations", static_cast<double>(lp.iterations)});
      if (config.algorithm == Algorithm::RPipageL2)
        report.three_quarter_threshold = 0.75 * lp.objective_value;
    }
    report.timings_seconds.push_back({"relax", relax_timer.seconds()});

    const bool randomized =
        config.algorithm == Algorithm::RPipageL2 || config.algorithm == Algorithm::Random;
    const int runs = randomized ? config.repetitions : 1;
    if (!randomized && config.repetitions > 1)
      report.notes.push_back("deterministic algorithm; repetitions collapsed to 1");

    detail::Timer round_timer;
    std::optional<Assignment> best;
    double best_value = 0.0;
    std::vector<double> values;
    for (int rep = 0; rep < runs; ++rep) {
      const std::uint64_t rep_seed = runs == 1 ? config.seed : Rng(config.seed).split(static_cast<std::uint64_t>(rep)).next_u64();
      Assignment x;
      switch (config.algorithm) {
        case Algorithm::Exact: {
          const ExactResult exact = solve_exact(solve_instance);
          x = exact.assignment;
          if (exact.status == ExactStatus::BudgetExceeded) {
            report.notes.push_back("exact: node budget exceeded; reporting the incumbent (certified upper bound " +
                                   io::detail::format_double(exact.upper_bound) + ")");
            report.metrics.push_back({"exact_upper_bound", exact.upper_bound});
          }
          break;
        }
        case Algorithm::Greedy:
          x = greedy(solve_instance);
          break;
        case Algorithm::Random:
          x = random_assign(solve_instance, rep_seed);
          break;
        case Algorithm::PipageL1:
          x = pipage_round(solve_instance, *fractional);
          break;
        case Algorithm::RPipageL2:
          x = randomized_pipage_round(solve_instance, *fractional, rep_seed);
          break;
      }
      const double value = evaluate_objective(original, x).total;
      values.push_back(value);
      if (runs > 1) report.per_seed.push_back({rep_seed, value});
      if (!best || value > best_value) {
        best = std::move(x);
        best_value = value;
      }
    }
    report.timings_seconds.push_back({"round", round_timer.seconds()});

    report.objective = evaluate_objective(original, *best);
    if (runs > 1) {
      report.mean_value = detail::mean_of(values);
      report.stddev_value = detail::population_std(values);
    }
    bool exact_budget_hit = false;
    for (const auto& [name, value] : report.metrics) exact_budget_hit |= name == "exact_upper_bound";
    if (config.algorithm == Algorithm::Exact && !exact_budget_hit) {
      report.metrics.push_back({"approximation_ratio", 1.0});
    } else if (report.lp_value && *report.lp_value > 0.0) {
      // the LP value upper-bounds the optimum, so this is a lower bound on AR
      report.metrics.push_back({"ar_lower_bound_vs_lp", report.objective.total / *report.lp_value});
    }
    report.timings_seconds.push_back({"total", total.seconds()});

    if (!config.assignment_out.empty()) io::save_assignment(original, *best, config.assignment_out);
    if (!config.out_path.empty()) io::save_report(report, config.out_path);
    std::printf("%s F=%s (F_R=%s, F_G=%s)\n", report.algorithm.c_str(),
                io::detail::format_double(report.objective.total).c_str(),
                io::detail::format_double(report.objective.task_satisfaction).c_str(),
                io::detail::format_double(report.objective.social_satisfaction).c_str());
    return kExitOk;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "solve: %s\n", err.what());
    return kExitUsage;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "solve: %s\n", err.what());
    return kExitFailure;
  }
}

inline int cmd_generate(const RunConfig& config) {
  try {
    if (config.out_path.empty()) throw std::invalid_argument("--out is required");
    if (config.generator == "synth-tf") {
      io::SynthTFConfig gen;
      if (config.gen_nodes > 0) gen.num_nodes = config.gen_nodes;
      if (config.gen_blocks > 0) gen.num_blocks = config.gen_blocks;
      if (config.alpha) gen.alpha = *config.alpha;
      const Instance inst = io::generate_synth_tf(config.seed, gen);
      io::save_instance(inst, config.out_path);
      std::printf("synth-tf: %d nodes, %d tasks, %zu conflict edges -> %s\n", inst.num_nodes(), inst.num_tasks(),
                  inst.edges().size(), config.out_path.c_str());
    } else if (config.generator == "company") {
      io::CompanyConfig gen;
      if (config.gen_nodes > 0) gen.num_employees = config.gen_nodes;
      if (config.gen_switch_probability >= 0.0) gen.switch_probability = config.gen_switch_probability;
      if (config.gen_capacity_factor > 0.0) gen.capacity_factor = config.gen_capacity_factor;
      if (config.alpha) gen.alpha = *config.alpha;
      const io::CompanyData data = io::generate_company(config.seed, gen);
      io::save_instance(data.instance, config.out_path);
      if (!config.initial_assignment_out.empty())
        io::save_assignment(data.instance, data.initial, config.initial_assignment_out);
      std::printf("company: %d employees, %d departments, %zu conflict edges -> %s\n", data.instance.num_nodes(),
                  data.instance.num_tasks(), data.instance.edges().size(), config.out_path.c_str());
    } else {
      throw std::invalid_argument("unknown generator '" + config.generator + "' (synth-tf | company)");
    }
    return kExitOk;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "generate: %s\n", err.what());
    return kExitUsage;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "generate: %s\n", err.what());
    return kExitFailure;
  }
}

inline int cmd_sweep(const RunConfig& config) {
  try {
    if (config.out_path.empty()) throw std::invalid_argument("--out is required");
    if (config.alphas.empty()) throw std::invalid_argument("--alphas is required");
    const Instance inst = io::load_instance(config.instance_path);
    const std::vector<Algorithm> algorithms =
        config.algorithms.empty() ? std::vector<Algorithm>{Algorithm::RPipageL2} : config.algorithms;
    const auto points = alpha_sweep(inst, config.alphas, algorithms, config.seed);
    std::vector<std::pair<std::string, std::string>> echo = detail::config_echo(config);
    save_sweep(points, config.out_path, echo);
    int failures = 0;
    for (const auto& p : points)
      if (!p.ok) ++failures;
    std::printf("sweep: %zu points (%d failed) -> %s\n", points.size(), failures, config.out_path.c_str());
    return kExitOk;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "sweep: %s\n", err.what());
    return kExitUsage;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "sweep: %s\n", err.what());
    return kExitFailure;
  }
}

/// Evaluate one or more assignment files side by side: objective breakdown
/// always, rank/friend metrics when ranking data is supplied.
inline int cmd_evaluate(const RunConfig& config) {
  try {
    if (config.assignment_paths.empty()) throw std::invalid_argument("at least one --assignment is required");
    const Instance inst = detail::resolve_weight(io::load_instance(config.instance_path), config);
    std::optional<io::RankingData> rankings;
    if (!config.rankings_csv.empty() || !config.friends_csv.empty()) {
      if (config.rankings_csv.empty() || config.friends_csv.empty())
        throw std::invalid_argument("--rankings and --friends must be given together");
      rankings = io::load_rankings(config.rankings_csv, config.friends_csv, inst);
    }

    std::vector<std::string> names;
    std::vector<ObjectiveBreakdown> objectives;
    std::vector<QualityMetrics> metrics;
    for (const auto& path : config.assignment_paths) {
      const Assignment x = io::load_assignment(inst, path);
      names.push_back(path);
      objectives.push_back(evaluate_objective(inst, x));
      if (rankings) metrics.push_back(quality_metrics(inst, *rankings, x));
    }

    std::string out = "teamcut-evaluation v1\n";
    for (const auto& [k, v] : detail::config_echo(config)) out += "config " + k + " " + v + "\n";
    out += "columns metric";
    for (const auto& n : names) out += " " + n;
    out += "\n";
    auto row = [&](const std::string& name, auto get) {
      out += "row " + name;
      for (std::size_t i = 0; i < names.size(); ++i) out += " " + io::detail::format_double(get(i));
      out += "\n";
    };
    row("F_R", [&](std::size_t i) { return objectives[i].task_satisfaction; });
    row("F_G", [&](std::size_t i) { return objectives[i].social_satisfaction; });
    row("F", [&](std::size_t i) { return objectives[i].total; });
    if (rankings) {
      row("maxQ_R", [&](std::size_t i) { return metrics[i].max_rank; });
      row("avgQ_R", [&](std::size_t i) { return metrics[i].avg_rank; });
      row("stdQ_R", [&](std::size_t i) { return metrics[i].std_rank; });
      row("maxQ_G", [&](std::size_t i) { return metrics[i].max_friends; });
      row("avgQ_G", [&](std::size_t i) { return metrics[i].avg_friends; });
      row("stdQ_G", [&](std::size_t i) { return metrics[i].std_friends; });
    }
    out += "end\n";
    if (!config.out_path.empty())
      io::detail::atomic_write(config.out_path, out);
    else
      std::fputs(out.c_str(), stdout);
    return kExitOk;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "evaluate: %s\n", err.what());
    return kExitUsage;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "evaluate: %s\n", err.what());
    return kExitFailure;
  }
}

}  // namespace teamcut::cli
