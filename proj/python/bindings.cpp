#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "instgnn/harness.hpp"
#include "instgnn/labeling.hpp"

namespace py = pybind11;
using namespace instgnn;

namespace {

RunConfig make_config(const std::string& strategy, double threshold,
                      int max_inst_per_qe, const std::string& weights,
                      double timeout_s, int max_rounds, uint64_t seed) {
  auto kind = strategy_from_name(strategy);
  if (!kind) throw py::value_error("unknown strategy: " + strategy);
  RunConfig config;
  config.strategy = *kind;
  config.threshold = threshold;
  config.max_inst_per_qe = max_inst_per_qe;
  config.weights_path = weights;
  config.timeout_s = timeout_s;
  config.max_rounds = max_rounds;
  config.seed = seed;
  return config;
}

py::dict line_to_dict(const ResultLine& line) {
  py::dict d;
  d["problem"] = line.problem;
  d["status"] = line.status;
  d["rounds"] = line.rounds;
  d["instantiation_count"] = line.instantiation_count;
  d["wall_ms"] = line.wall_ms;
  d["gnn_ms"] = line.gnn_ms;
  if (!line.error.empty()) d["error"] = line.error;
  return d;
}

py::dict parse_summary(const ParseResult& parsed) {
  if (!parsed.ok()) {
    throw py::value_error("parse failed:\n" + parsed.diagnostics_to_string());
  }
  const Problem& p = *parsed.problem;
  py::dict d;
  d["name"] = p.name;
  d["num_sorts"] = p.bank.num_sorts() - 1;  // without the built-in Bool
  d["num_ground_clauses"] = p.ground_clauses.size();
  d["num_qes"] = p.qes.size();
  d["pretty"] = print_native(p);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Instantiation-based prover with GNN-guided enumeration";

  m.def(
      "parse_native",
      [](const std::string& text, const std::string& name) {
        return parse_summary(parse_native(text, name));
      },
      py::arg("text"), py::arg("name") = "", "Parse native clausal text.");

  m.def(
      "parse_tptp_cnf",
      [](const std::string& text, const std::string& name) {
        return parse_summary(parse_tptp_cnf(text, name));
      },
      py::arg("text"), py::arg("name") = "", "Parse a TPTP CNF subset.");

  m.def(
      "parse_file",
      [](const std::string& path) { return parse_summary(parse_file(path)); },
      py::arg("path"));

  m.def(
      "solve_file",
      [](const std::string& path, const std::string& strategy,
         double threshold, int max_inst_per_qe, const std::string& weights,
         double timeout, int max_rounds, uint64_t seed) {
        return line_to_dict(run_solve_file(
            path, make_config(strategy, threshold, max_inst_per_qe, weights,
                              timeout, max_rounds, seed)));
      },
      py::arg("path"), py::arg("strategy") = "enum",
      py::arg("threshold") = 1e-5, py::arg("max_inst_per_qe") = 1,
      py::arg("weights") = "", py::arg("timeout") = 10.0,
      py::arg("max_rounds") = 0, py::arg("seed") = 0,
      "Solve one problem file; returns the result-line fields.");

  m.def(
      "gen_needle_corpus",
      [](const std::string& out_dir, int problems, int distractors,
         uint64_t seed) {
        NeedleCorpusSpec spec;
        spec.n_problems = problems;
        spec.n_distractors = distractors;
        spec.seed = seed;
        return gen_needle_corpus(out_dir, spec);
      },
      py::arg("out_dir"), py::arg("problems") = 50,
      py::arg("distractors") = 20, py::arg("seed") = 0,
      "Write a synthetic needle corpus; returns the file paths.");

  m.def(
      "collect",
      [](const std::string& corpus_dir, const std::string& dataset_out,
         double timeout, uint64_t seed) {
        CollectSummary s = collect_corpus(corpus_dir, dataset_out, timeout,
                                          seed);
        py::dict d;
        d["total"] = s.total;
        d["solved"] = s.solved;
        d["transitions"] = s.transitions;
        d["failures"] = s.failures;
        return d;
      },
      py::arg("corpus_dir"), py::arg("dataset_out"), py::arg("timeout") = 10.0,
      py::arg("seed") = 0,
      "Collect labeled transitions from e-matching proofs.");

  m.def(
      "train",
      [](const std::string& dataset, const std::string& weights_out,
         int iterations, uint64_t seed, int embedding_size, int layers) {
        TrainSummary s = train_dataset_file(dataset, weights_out, iterations,
                                            seed, {embedding_size, layers});
        py::dict d;
        d["initial_loss"] = s.initial_loss;
        d["final_loss"] = s.final_loss;
        d["term_top1_accuracy"] = s.metrics.term_top1_accuracy;
        d["qe_tpr"] = s.metrics.qe_tpr;
        d["qe_tnr"] = s.metrics.qe_tnr;
        d["report"] = train_summary_report(s);
        return d;
      },
      py::arg("dataset"), py::arg("weights_out"), py::arg("iterations") = 150,
      py::arg("seed") = 0, py::arg("embedding_size") = 64,
      py::arg("layers") = 10, "Train the guidance network on a dataset.");

  m.def(
      "eval_corpus",
      [](const std::string& corpus_dir,
         const std::vector<std::string>& strategies, double threshold,
         int max_inst_per_qe, const std::string& weights, double timeout,
         int max_rounds, uint64_t seed, int jobs,
         const std::string& worker_exe) {
        std::vector<RunConfig> configs;
        for (const std::string& s : strategies) {
          configs.push_back(make_config(s, threshold, max_inst_per_qe, weights,
                                        timeout, max_rounds, seed));
        }
        EvalReport r = eval_corpus(corpus_dir, configs, jobs, worker_exe);
        py::dict d;
        d["strategies"] = r.strategies;
        d["problems"] = r.problems;
        d["solved_counts"] = r.solved_counts;
        d["set_difference"] = r.set_difference;
        d["median_instantiations"] = r.median_instantiations;
        d["table"] = r.table_text();
        d["csv"] = r.csv_text();
        py::list lines;
        for (const auto& strategy_lines : r.results) {
          py::list per_strategy;
          for (const ResultLine& line : strategy_lines) {
            per_strategy.append(line_to_dict(line));
          }
          lines.append(per_strategy);
        }
        d["results"] = lines;
        return d;
      },
      py::arg("corpus_dir"), py::arg("strategies"), py::arg("threshold") = 1e-5,
      py::arg("max_inst_per_qe") = 1, py::arg("weights") = "",
      py::arg("timeout") = 10.0, py::arg("max_rounds") = 0, py::arg("seed") = 0,
      py::arg("jobs") = 1, py::arg("worker_exe") = "",
      "Run a strategy matrix over a corpus. jobs > 1 needs worker_exe "
      "(the instgnn CLI) because workers are separate processes.");

  m.def(
      "score_problem",
      [](const std::string& path, const std::string& weights_path) {
        ParseResult parsed = parse_file(path);
        if (!parsed.ok()) {
          throw py::value_error("parse failed:\n" +
                                parsed.diagnostics_to_string());
        }
        Problem problem = std::move(*parsed.problem);
        GnnParameters params = load_params(weights_path);
        ProofStateGraph graph =
            export_graph(problem.bank, problem.ground_clauses, problem.qes, 1);
        GnnOutputs out = gnn_forward(params, graph);
        py::dict d;
        d["qe_scores"] = out.qe_scores;
        d["term_probs"] = out.term_probs;
        return d;
      },
      py::arg("path"), py::arg("weights"),
      "Forward pass on the initial proof state; returns QE scores and "
      "per-variable term distributions.");
}
