// Command-line front end: generate | solve | sweep | evaluate.

#include <string>
#include <vector>

#include "CLI11.hpp"
#include "teamcut/teamcut.hpp"

namespace {

std::vector<teamcut::Algorithm> parse_algorithms(const std::vector<std::string>& names) {
  std::vector<teamcut::Algorithm> out;
  for (const auto& name : names) {
    const auto algo = teamcut::algorithm_from_string(name);
    if (!algo) throw CLI::ValidationError("--algorithms", "unknown algorithm '" + name + "'");
    out.push_back(*algo);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"teamcut: capacity-constrained team formation over a conflict graph"};
  app.require_subcommand(1);

  teamcut::cli::RunConfig config;
  std::string algorithm_name = "rpipage-l2";
  std::vector<std::string> algorithm_names;

  auto add_weight_flags = [&](CLI::App* cmd) {
    auto* a = cmd->add_option("--alpha", config.alpha, "balancing factor; lambda = alpha * w(E_G)/|V|");
    auto* l = cmd->add_option("--lambda", config.lambda, "preference weight lambda");
    a->excludes(l);
    l->excludes(a);
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one instance and write a report");
  solve->add_option("--instance", config.instance_path, "instance file")->required();
  solve->add_option("--algorithm", algorithm_name,
                    "exact | pipage-l1 | rpipage-l2 | greedy | random (default rpipage-l2)");
  add_weight_flags(solve);
  solve->add_option("--sparsify", config.sparsify_p, "keep each conflict edge with probability p in (0,1]");
  solve->add_flag("--compact", config.compact, "coarsen into supernodes before the relaxation");
  solve->add_option("--supernode-size", config.supernode_size, "target supernode size for --compact");
  solve->add_option("--seed", config.seed, "random seed (default 1)");
  solve->add_option("--repetitions", config.repetitions, "independent runs for randomized algorithms");
  solve->add_option("--report", config.out_path, "report file to write");
  solve->add_option("--assignment-out", config.assignment_out, "write the best assignment here");
  solve->add_option("--dump-lp", config.lp_dump_path, "dump the relaxation LP in LP text format");

  CLI::App* generate = app.add_subcommand("generate", "write a synthetic instance");
  generate->add_option("kind", config.generator, "synth-tf | company")->required();
  generate->add_option("--out", config.out_path, "instance file to write")->required();
  generate->add_option("--seed", config.seed, "random seed (default 1)");
  generate->add_option("--nodes", config.gen_nodes, "number of individuals");
  generate->add_option("--blocks", config.gen_blocks, "synth-tf: number of planted blocks");
  generate->add_option("--switch-prob", config.gen_switch_probability, "company: switchable-employee probability");
  generate->add_option("--capacity-factor", config.gen_capacity_factor,
                       "company: capacity slack factor (default 1.0 = department size)");
  generate->add_option("--initial-out", config.initial_assignment_out, "company: write the initial assignment");
  add_weight_flags(generate);

  CLI::App* sweep = app.add_subcommand("sweep", "run the balancing-factor sweep");
  sweep->add_option("--instance", config.instance_path, "instance file")->required();
  sweep->add_option("--alphas", config.alphas, "alpha grid")->required()->delimiter(',');
  sweep->add_option("--algorithms", algorithm_names, "algorithms to sweep (default rpipage-l2)")->delimiter(',');
  sweep->add_option("--seed", config.seed, "random seed (default 1)");
  sweep->add_option("--out", config.out_path, "sweep table to write")->required();

  CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate assignment files side by side");
  evaluate->add_option("--instance", config.instance_path, "instance file")->required();
  evaluate->add_option("--assignment", config.assignment_paths, "assignment file (repeatable)")->required();
  evaluate->add_option("--rankings", config.rankings_csv, "rankings CSV for quality metrics");
  evaluate->add_option("--friends", config.friends_csv, "friend-pair CSV for quality metrics");
  evaluate->add_option("--out", config.out_path, "write the table here instead of stdout");
  add_weight_flags(evaluate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);  // prints help or the diagnostic
    return code == 0 ? 0 : teamcut::cli::kExitUsage;
  }

  try {
    if (solve->parsed()) {
      const auto algo = teamcut::algorithm_from_string(algorithm_name);
      if (!algo) {
        std::fprintf(stderr, "solve: unknown algorithm '%s'\n", algorithm_name.c_str());
        return teamcut::cli::kExitUsage;
      }
      config.algorithm = *algo;
      return teamcut::cli::cmd_solve(config);
    }
    if (generate->parsed()) return teamcut::cli::cmd_generate(config);
    if (sweep->parsed()) {
      config.algorithms = parse_algorithms(algorithm_names);
      return teamcut::cli::cmd_sweep(config);
    }
    if (evaluate->parsed()) return teamcut::cli::cmd_evaluate(config);
  } catch (const CLI::Error& err) {
    return app.exit(err);
  }
  return teamcut::cli::kExitUsage;
}
