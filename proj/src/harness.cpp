#include "instgnn/harness.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "instgnn/labeling.hpp"

namespace instgnn {

using nlohmann::json;

std::string RunConfig::display_name() const {
  if (!label.empty()) return label;
  return strategy_name(strategy);
}

std::string result_line_to_json(const ResultLine& line) {
  json j{{"problem", line.problem},
         {"status", line.status},
         {"rounds", line.rounds},
         {"instantiation_count", line.instantiation_count},
         {"wall_ms", line.wall_ms},
         {"gnn_ms", line.gnn_ms}};
  if (!line.error.empty()) j["error"] = line.error;
  return j.dump();
}

std::optional<ResultLine> result_line_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    ResultLine line;
    line.problem = j.at("problem").get<std::string>();
    line.status = j.at("status").get<std::string>();
    line.rounds = j.at("rounds").get<int>();
    line.instantiation_count = j.at("instantiation_count").get<long long>();
    line.wall_ms = j.at("wall_ms").get<long long>();
    line.gnn_ms = j.at("gnn_ms").get<long long>();
    if (j.contains("error")) line.error = j.at("error").get<std::string>();
    return line;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

ResultLine run_solve_file(const std::string& path, const RunConfig& config,
                          const GnnParameters* preloaded_weights) {
  ResultLine line;
  line.problem = std::filesystem::path(path).stem().string();
  try {
    ParseResult parsed = parse_file(path, config.format);
    if (!parsed.ok()) {
      line.status = "ERROR";
      line.error = parsed.diagnostics_to_string();
      return line;
    }
    Problem problem = std::move(*parsed.problem);
    line.problem = problem.name;

    GnnParameters loaded;
    SolveOptions options;
    options.strategy = config.strategy;
    options.timeout_s = config.timeout_s;
    options.max_rounds = config.max_rounds;
    options.guidance.threshold = config.threshold;
    options.guidance.max_inst_per_qe = config.max_inst_per_qe;
    options.guidance.rng_seed = config.seed;
    if (strategy_needs_weights(config.strategy)) {
      if (preloaded_weights) {
        options.params = preloaded_weights;
      } else {
        if (config.weights_path.empty()) {
          line.status = "ERROR";
          line.error = "strategy requires --weights";
          return line;
        }
        loaded = load_params(config.weights_path);
        options.params = &loaded;
      }
    }

    SolveResult result = solve(problem, options);
    line.status = outcome_name(result.outcome);
    line.rounds = result.rounds;
    line.instantiation_count = result.instantiation_count;
    line.wall_ms = result.wall_micros / 1000;
    line.gnn_ms = result.gnn_micros / 1000;
  } catch (const std::exception& e) {
    line.status = "ERROR";
    line.error = e.what();
  }
  return line;
}

std::vector<std::string> corpus_files(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  if (!fs::is_directory(dir)) return files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    if (ext == ".sx" || ext == ".p" || ext == ".cnf" || ext == ".tptp") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

CollectSummary collect_corpus(const std::string& corpus_dir,
                              const std::string& dataset_out,
                              double timeout_s, uint64_t seed,
                              std::vector<Transition>* keep) {
  CollectSummary summary;
  std::vector<Transition> all;
  for (const std::string& path : corpus_files(corpus_dir)) {
    ++summary.total;
    ParseResult parsed = parse_file(path);
    if (!parsed.ok()) {
      summary.failures.push_back(path + ": parse error");
      continue;
    }
    Problem problem = std::move(*parsed.problem);
    SolveOptions options;
    options.strategy = StrategyKind::EMatching;
    options.timeout_s = timeout_s;
    GraphRecorder recorder;
    SolveResult result;
    try {
      result = solve(problem, options, &recorder);
    } catch (const std::exception& e) {
      summary.failures.push_back(path + ": " + e.what());
      continue;
    }
    if (result.outcome != SolveOutcome::Proved) {
      summary.failures.push_back(path + ": " + outcome_name(result.outcome));
      continue;
    }
    ++summary.solved;
    std::vector<Transition> transitions =
        label_transitions(problem, result, recorder.graphs(), seed);
    for (Transition& t : transitions) all.push_back(std::move(t));
  }
  summary.transitions = all.size();
  DatasetHeader header;
  header.label_seed = seed;
  write_dataset(dataset_out, all, header);
  if (keep) *keep = std::move(all);
  return summary;
}

TrainSummary train_dataset_file(const std::string& dataset_path,
                                const std::string& weights_out, int iterations,
                                uint64_t seed, const GnnConfig& config) {
  Dataset dataset = read_dataset(dataset_path);
  if (dataset.transitions.empty()) {
    throw DatasetError("dataset has no transitions");
  }
  GnnParameters params = GnnParameters::init(config, seed);
  TrainOptions options;
  options.iterations = iterations;
  options.seed = seed;
  TrainSummary summary;
  TrainLog log = gnn_train(params, dataset.transitions, options);
  summary.loss_log = std::move(log.loss_per_iteration);
  summary.initial_loss = summary.loss_log.empty() ? 0 : summary.loss_log.front();
  summary.final_loss = summary.loss_log.empty() ? 0 : summary.loss_log.back();
  summary.metrics = gnn_metrics(params, dataset.transitions);
  save_params(params, weights_out);
  return summary;
}

std::string train_summary_report(const TrainSummary& s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1);
  os << "training transitions: term top-1 accuracy " << 100 * s.metrics.term_top1_accuracy
     << "% (" << s.metrics.n_labeled_vars << " labeled variables); "
     << 100 * s.metrics.qe_tpr << "% of useful QEs scored above 0.5, "
     << 100 * s.metrics.qe_tnr << "% of non-useful QEs scored below 0.5\n";
  os << std::setprecision(4) << "loss: " << s.initial_loss << " -> "
     << s.final_loss << " over " << s.loss_log.size() << " iterations\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> worker_argv(const std::string& exe,
                                     const std::string& problem,
                                     const RunConfig& config) {
  std::vector<std::string> args{exe, "solve", problem};
  args.push_back("--strategy");
  args.push_back(strategy_name(config.strategy));
  args.push_back("--timeout");
  args.push_back(std::to_string(config.timeout_s));
  args.push_back("--seed");
  args.push_back(std::to_string(config.seed));
  args.push_back("--threshold");
  args.push_back(std::to_string(config.threshold));
  args.push_back("--max-inst-per-qe");
  args.push_back(std::to_string(config.max_inst_per_qe));
  if (config.max_rounds > 0) {
    args.push_back("--max-rounds");
    args.push_back(std::to_string(config.max_rounds));
  }
  if (!config.weights_path.empty()) {
    args.push_back("--weights");
    args.push_back(config.weights_path);
  }
  return args;
}

struct WorkerProc {
  pid_t pid = -1;
  int fd = -1;
  size_t task = 0;
  std::string buffer;
  std::chrono::steady_clock::time_point deadline;
};

ResultLine timeout_line(const std::string& problem_path, double timeout_s) {
  ResultLine line;
  line.problem = std::filesystem::path(problem_path).stem().string();
  line.status = "TIMEOUT";
  line.wall_ms = static_cast<long long>(timeout_s * 1000);
  return line;
}

ResultLine parse_worker_output(const WorkerProc& worker,
                               const std::string& problem_path,
                               double timeout_s) {
  // The worker prints exactly one JSON result line; take the last line.
  std::istringstream is(worker.buffer);
  std::string line, last;
  while (std::getline(is, line)) {
    if (!line.empty()) last = line;
  }
  if (auto parsed = result_line_from_json(last)) return *parsed;
  ResultLine bad = timeout_line(problem_path, timeout_s);
  bad.status = "ERROR";
  bad.error = "worker produced no result line";
  return bad;
}

class ProcessPool {
 public:
  ProcessPool(const std::string& exe, int jobs) : exe_(exe), jobs_(jobs) {}

  std::vector<ResultLine> run(const std::vector<std::string>& problems,
                              const RunConfig& config) {
    std::vector<ResultLine> results(problems.size());
    size_t next = 0;
    std::vector<WorkerProc> active;
    while (next < problems.size() || !active.empty()) {
      while (static_cast<int>(active.size()) < jobs_ &&
             next < problems.size()) {
        active.push_back(spawn(problems[next], config, next));
        ++next;
      }
      wait_any(active, problems, config, results);
    }
    return results;
  }

 private:
  WorkerProc spawn(const std::string& problem, const RunConfig& config,
                   size_t task) {
    int pipefd[2];
    if (pipe(pipefd) != 0) {
      throw std::runtime_error("pipe() failed");
    }
    pid_t pid = fork();
    if (pid < 0) {
      throw std::runtime_error("fork() failed");
    }
    if (pid == 0) {
      // Child: stdout -> pipe, exec the solver.
      dup2(pipefd[1], STDOUT_FILENO);
      close(pipefd[0]);
      close(pipefd[1]);
      std::vector<std::string> args = worker_argv(exe_, problem, config);
      std::vector<char*> argv;
      for (std::string& a : args) argv.push_back(a.data());
      argv.push_back(nullptr);
      execv(exe_.c_str(), argv.data());
      _exit(127);
    }
    close(pipefd[1]);
    fcntl(pipefd[0], F_SETFL, O_NONBLOCK);
    WorkerProc worker;
    worker.pid = pid;
    worker.fd = pipefd[0];
    worker.task = task;
    // Grace period on top of the solver's own wall-clock limit.
    worker.deadline = std::chrono::steady_clock::now() +
                      std::chrono::milliseconds(
                          static_cast<long long>(config.timeout_s * 1000) +
                          5000);
    return worker;
  }

  void wait_any(std::vector<WorkerProc>& active,
                const std::vector<std::string>& problems,
                const RunConfig& config, std::vector<ResultLine>& results) {
    if (active.empty()) return;
    std::vector<pollfd> fds;
    for (const WorkerProc& w : active) {
      fds.push_back({w.fd, POLLIN, 0});
    }
    auto now = std::chrono::steady_clock::now();
    auto first_deadline = active[0].deadline;
    for (const WorkerProc& w : active) {
      first_deadline = std::min(first_deadline, w.deadline);
    }
    int wait_ms = static_cast<int>(std::max<long long>(
        1, std::chrono::duration_cast<std::chrono::milliseconds>(
               first_deadline - now)
               .count()));
    poll(fds.data(), fds.size(), std::min(wait_ms, 200));

    now = std::chrono::steady_clock::now();
    for (size_t i = active.size(); i > 0; --i) {
      WorkerProc& w = active[i - 1];
      char buf[4096];
      ssize_t got;
      bool eof = false;
      while ((got = read(w.fd, buf, sizeof(buf))) > 0) {
        w.buffer.append(buf, static_cast<size_t>(got));
      }
      if (got == 0) eof = true;
      if (eof) {
        int status = 0;
        waitpid(w.pid, &status, 0);
        close(w.fd);
        results[w.task] =
            parse_worker_output(w, problems[w.task], config.timeout_s);
        active.erase(active.begin() + static_cast<long>(i - 1));
      } else if (now >= w.deadline) {
        kill(w.pid, SIGKILL);
        int status = 0;
        waitpid(w.pid, &status, 0);
        close(w.fd);
        results[w.task] = timeout_line(problems[w.task], config.timeout_s);
        active.erase(active.begin() + static_cast<long>(i - 1));
      }
    }
  }

  std::string exe_;
  int jobs_;
};

double median_of(std::vector<long long> values) {
  if (values.empty()) return -1;
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  if (n % 2 == 1) return static_cast<double>(values[n / 2]);
  return (static_cast<double>(values[n / 2 - 1]) +
          static_cast<double>(values[n / 2])) /
         2.0;
}

}  // namespace

std::string EvalReport::table_text() const {
  std::ostringstream os;
  os << "strategy            solved  median_insts\n";
  for (size_t s = 0; s < strategies.size(); ++s) {
    os << std::left << std::setw(20) << strategies[s] << std::right
       << std::setw(6) << solved_counts[s] << "  ";
    if (median_instantiations[s] < 0) {
      os << "-";
    } else {
      os << median_instantiations[s];
    }
    os << "\n";
  }
  os << "\nset differences (row solves, column does not):\n";
  os << std::left << std::setw(20) << "";
  for (const std::string& s : strategies) os << std::setw(20) << s;
  os << "\n";
  for (size_t a = 0; a < strategies.size(); ++a) {
    os << std::setw(20) << strategies[a];
    for (size_t b = 0; b < strategies.size(); ++b) {
      os << std::setw(20) << set_difference[a][b];
    }
    os << "\n";
  }
  return os.str();
}

std::string EvalReport::csv_text() const {
  std::ostringstream os;
  os << "strategy,problem,status,rounds,instantiations,wall_ms,gnn_ms\n";
  for (size_t s = 0; s < strategies.size(); ++s) {
    for (size_t p = 0; p < problems.size(); ++p) {
      const ResultLine& r = results[s][p];
      os << strategies[s] << "," << r.problem << "," << r.status << ","
         << r.rounds << "," << r.instantiation_count << "," << r.wall_ms << ","
         << r.gnn_ms << "\n";
    }
  }
  return os.str();
}

EvalReport eval_corpus(const std::string& corpus_dir,
                       const std::vector<RunConfig>& strategies, int jobs,
                       const std::string& worker_exe) {
  EvalReport report;
  report.problems = corpus_files(corpus_dir);

  std::string exe = worker_exe;
  if (jobs > 1 && exe.empty()) {
    std::error_code ec;
    auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) exe = self.string();
  }

  for (const RunConfig& config : strategies) {
    report.strategies.push_back(config.display_name());
    std::vector<ResultLine> lines;
    if (jobs > 1 && !exe.empty()) {
      ProcessPool pool(exe, jobs);
      lines = pool.run(report.problems, config);
    } else {
      GnnParameters weights;
      const GnnParameters* preloaded = nullptr;
      if (strategy_needs_weights(config.strategy) &&
          !config.weights_path.empty()) {
        weights = load_params(config.weights_path);
        preloaded = &weights;
      }
      for (const std::string& path : report.problems) {
        lines.push_back(run_solve_file(path, config, preloaded));
      }
    }
    report.results.push_back(std::move(lines));
  }

  const size_t S = strategies.size();
  report.solved_counts.assign(S, 0);
  report.median_instantiations.assign(S, -1);
  std::vector<std::vector<bool>> solved(S);
  for (size_t s = 0; s < S; ++s) {
    std::vector<long long> counts;
    solved[s].assign(report.problems.size(), false);
    for (size_t p = 0; p < report.problems.size(); ++p) {
      if (report.results[s][p].status == "PROVED") {
        solved[s][p] = true;
        ++report.solved_counts[s];
        counts.push_back(report.results[s][p].instantiation_count);
      }
    }
    report.median_instantiations[s] = median_of(std::move(counts));
  }
  report.set_difference.assign(S, std::vector<int>(S, 0));
  for (size_t a = 0; a < S; ++a) {
    for (size_t b = 0; b < S; ++b) {
      int n = 0;
      for (size_t p = 0; p < report.problems.size(); ++p) {
        if (solved[a][p] && !solved[b][p]) ++n;
      }
      report.set_difference[a][b] = n;
    }
  }
  return report;
}

}  // namespace instgnn
