#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "instgnn/gnn.hpp"
#include "instgnn/needle.hpp"
#include "instgnn/solve_loop.hpp"
#include "instgnn/transitions.hpp"

namespace instgnn {

struct RunConfig {
  StrategyKind strategy = StrategyKind::Enumeration;
  double threshold = 1e-5;
  int max_inst_per_qe = 1;
  std::string weights_path;  // guided strategies
  double timeout_s = 10.0;
  int max_rounds = 0;
  uint64_t seed = 0;
  ProblemFormat format = ProblemFormat::Auto;
  std::string label;  // display name in eval tables; strategy name if empty

  std::string display_name() const;
};

struct ResultLine {
  std::string problem;
  std::string status;  // PROVED | GAVE_UP | TIMEOUT | ERROR
  int rounds = 0;
  long long instantiation_count = 0;
  long long wall_ms = 0;
  long long gnn_ms = 0;
  std::string error;  // status ERROR only
};

std::string result_line_to_json(const ResultLine& line);
std::optional<ResultLine> result_line_from_json(const std::string& text);

/// Parses and solves one problem file; never throws.
ResultLine run_solve_file(const std::string& path, const RunConfig& config,
                          const GnnParameters* preloaded_weights = nullptr);

/// Problem files of a corpus directory, sorted by name.
std::vector<std::string> corpus_files(const std::string& dir);

struct CollectSummary {
  int total = 0;
  int solved = 0;
  size_t transitions = 0;
  std::vector<std::string> failures;  // problems that did not prove
};

/// Runs e-matching over the corpus, minimizes and labels every proved run,
/// and writes the dataset. Per-problem failures are recorded, not fatal.
CollectSummary collect_corpus(const std::string& corpus_dir,
                              const std::string& dataset_out,
                              double timeout_s, uint64_t seed,
                              std::vector<Transition>* keep = nullptr);

struct TrainSummary {
  double initial_loss = 0;
  double final_loss = 0;
  GuidanceMetrics metrics;  // on the training transitions
  std::vector<double> loss_log;
};

TrainSummary train_dataset_file(const std::string& dataset_path,
                                const std::string& weights_out, int iterations,
                                uint64_t seed, const GnnConfig& config = {});
std::string train_summary_report(const TrainSummary& summary);

struct EvalReport {
  std::vector<std::string> strategies;              // display names
  std::vector<std::string> problems;
  // results[s][p]: per strategy, per problem.
  std::vector<std::vector<ResultLine>> results;
  std::vector<int> solved_counts;
  // set_difference[a][b]: solved by a but not by b.
  std::vector<std::vector<int>> set_difference;
  std::vector<double> median_instantiations;        // over PROVED runs; -1 if none

  std::string table_text() const;
  std::string csv_text() const;
};

/// Runs every strategy over the corpus. With jobs > 1 each problem runs in
/// its own worker process (worker_exe solve ...), enforced by a wall-clock
/// kill; with jobs <= 1 everything runs in-process.
EvalReport eval_corpus(const std::string& corpus_dir,
                       const std::vector<RunConfig>& strategies, int jobs,
                       const std::string& worker_exe = "");

}  // namespace instgnn
