#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "instgnn/harness.hpp"

namespace {

using namespace instgnn;

struct StrategyFlags {
  std::string strategy = "enum";
  double threshold = 1e-5;
  int max_inst_per_qe = 1;
  std::string weights;
  double timeout_s = 10.0;
  int max_rounds = 0;
  uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--strategy", strategy,
                    "ematch|enum|dry-run|random-dry-run|qsampling|threshold")
        ->check(CLI::IsMember({"ematch", "enum", "dry-run", "random-dry-run",
                               "qsampling", "threshold"}));
    app->add_option("--threshold", threshold, "QE score cutoff");
    app->add_option("--max-inst-per-qe", max_inst_per_qe,
                    "instantiations per QE per round in guided modes")
        ->check(CLI::PositiveNumber);
    app->add_option("--weights", weights, "trained weight file");
    app->add_option("--timeout", timeout_s, "wall-clock limit in seconds");
    app->add_option("--max-rounds", max_rounds, "round budget (0 = none)");
    app->add_option("--seed", seed, "RNG seed");
  }

  RunConfig to_config() const {
    RunConfig config;
    config.strategy = *strategy_from_name(strategy);
    config.threshold = threshold;
    config.max_inst_per_qe = max_inst_per_qe;
    config.weights_path = weights;
    config.timeout_s = timeout_s;
    config.max_rounds = max_rounds;
    config.seed = seed;
    return config;
  }
};

int cmd_solve(const std::string& problem, const StrategyFlags& flags) {
  ResultLine line = run_solve_file(problem, flags.to_config());
  std::cout << result_line_to_json(line) << "\n";
  if (line.status == "ERROR") {
    std::cerr << line.error << "\n";
    return 1;
  }
  return 0;
}

int cmd_collect(const std::string& corpus, const std::string& dataset,
                double timeout_s, uint64_t seed) {
  CollectSummary summary = collect_corpus(corpus, dataset, timeout_s, seed);
  std::cout << "solved " << summary.solved << "/" << summary.total
            << " problems, " << summary.transitions << " transitions -> "
            << dataset << "\n";
  for (const std::string& f : summary.failures) {
    std::cerr << "unsolved: " << f << "\n";
  }
  return 0;
}

int cmd_train(const std::string& dataset, const std::string& out,
              int iterations, uint64_t seed, int embedding_size, int layers) {
  GnnConfig config{embedding_size, layers};
  TrainSummary summary =
      train_dataset_file(dataset, out, iterations, seed, config);
  std::cout << train_summary_report(summary);
  std::cout << "weights -> " << out << "\n";
  return 0;
}

int cmd_eval(const std::string& corpus, const std::string& strategies_csv,
             const StrategyFlags& flags, int jobs, const std::string& csv_out) {
  std::vector<RunConfig> configs;
  std::stringstream ss(strategies_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto kind = strategy_from_name(item);
    if (!kind) {
      std::cerr << "unknown strategy: " << item << "\n";
      return 1;
    }
    RunConfig config = flags.to_config();
    config.strategy = *kind;
    configs.push_back(std::move(config));
  }
  EvalReport report = eval_corpus(corpus, configs, jobs);
  std::cout << report.table_text();
  if (!csv_out.empty()) {
    std::ofstream out(csv_out);
    out << report.csv_text();
    std::cout << "per-run counts -> " << csv_out << "\n";
  }
  return 0;
}

int cmd_gen_needle(const std::string& out_dir, int problems, int distractors,
                   uint64_t seed) {
  NeedleCorpusSpec spec;
  spec.n_problems = problems;
  spec.n_distractors = distractors;
  spec.seed = seed;
  auto paths = gen_needle_corpus(out_dir, spec);
  std::cout << "wrote " << paths.size() << " problems to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"instgnn: instantiation-based prover with GNN guidance"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve one problem file");
  std::string problem_path;
  solve_cmd->add_option("problem", problem_path, "problem file")->required();
  StrategyFlags solve_flags;
  solve_flags.attach(solve_cmd);

  // collect
  auto* collect_cmd =
      app.add_subcommand("collect", "e-matching data collection over a corpus");
  std::string collect_corpus_dir, collect_dataset;
  double collect_timeout = 10.0;
  uint64_t collect_seed = 0;
  collect_cmd->add_option("corpus", collect_corpus_dir, "corpus directory")
      ->required();
  collect_cmd->add_option("--dataset", collect_dataset, "output dataset path")
      ->required();
  collect_cmd->add_option("--timeout", collect_timeout, "per-problem seconds");
  collect_cmd->add_option("--seed", collect_seed, "labeling RNG seed");

  // train
  auto* train_cmd = app.add_subcommand("train", "train the guidance network");
  std::string train_dataset, train_out;
  int train_iterations = 150;
  uint64_t train_seed = 0;
  int train_k = 64, train_l = 10;
  train_cmd->add_option("--dataset", train_dataset, "training dataset")
      ->required();
  train_cmd->add_option("--out", train_out, "output weight file")->required();
  train_cmd->add_option("--iterations", train_iterations, "Adam iterations");
  train_cmd->add_option("--seed", train_seed, "init + sampling seed");
  train_cmd->add_option("--embedding-size", train_k, "embedding width K");
  train_cmd->add_option("--layers", train_l, "message passing layers L");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "strategy matrix over a corpus");
  std::string eval_corpus_dir, eval_strategies = "enum,ematch", eval_csv;
  int eval_jobs = 1;
  eval_cmd->add_option("corpus", eval_corpus_dir, "corpus directory")
      ->required();
  eval_cmd->add_option("--strategies", eval_strategies,
                       "comma-separated strategy list");
  eval_cmd->add_option("--jobs", eval_jobs, "parallel worker processes");
  eval_cmd->add_option("--csv", eval_csv, "per-run instantiation-count CSV");
  StrategyFlags eval_flags;
  eval_flags.attach(eval_cmd);

  // gen-needle
  auto* gen_cmd = app.add_subcommand("gen-needle", "synthetic needle corpus");
  std::string gen_out;
  int gen_problems = 50, gen_distractors = 20;
  uint64_t gen_seed = 0;
  gen_cmd->add_option("out_dir", gen_out, "output directory")->required();
  gen_cmd->add_option("--problems", gen_problems, "number of problems");
  gen_cmd->add_option("--distractors", gen_distractors,
                      "distractor constants per problem");
  gen_cmd->add_option("--seed", gen_seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return cmd_solve(problem_path, solve_flags);
    if (collect_cmd->parsed()) {
      return cmd_collect(collect_corpus_dir, collect_dataset, collect_timeout,
                         collect_seed);
    }
    if (train_cmd->parsed()) {
      return cmd_train(train_dataset, train_out, train_iterations, train_seed,
                       train_k, train_l);
    }
    if (eval_cmd->parsed()) {
      return cmd_eval(eval_corpus_dir, eval_strategies, eval_flags, eval_jobs,
                      eval_csv);
    }
    if (gen_cmd->parsed()) {
      return cmd_gen_needle(gen_out, gen_problems, gen_distractors, gen_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
