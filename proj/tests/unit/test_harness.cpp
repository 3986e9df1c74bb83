#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "instgnn/harness.hpp"

using namespace instgnn;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("instgnn_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("result lines survive a JSON round trip") {
  ResultLine line{"prob", "PROVED", 3, 17, 120, 40, ""};
  auto back = result_line_from_json(result_line_to_json(line));
  REQUIRE(back.has_value());
  CHECK(back->problem == "prob");
  CHECK(back->status == "PROVED");
  CHECK(back->rounds == 3);
  CHECK(back->instantiation_count == 17);
  CHECK(!result_line_from_json("garbage").has_value());
}

TEST_CASE("solving a missing file reports ERROR") {
  RunConfig config;
  ResultLine line = run_solve_file("/nonexistent/problem.sx", config);
  CHECK(line.status == "ERROR");
  CHECK(!line.error.empty());
}

TEST_CASE("a zero timeout reports TIMEOUT") {
  TempDir dir("timeout");
  auto paths = gen_needle_corpus(dir.str(), {1, 30, 5});
  RunConfig config;
  config.timeout_s = 0.0;
  CHECK(run_solve_file(paths[0], config).status == "TIMEOUT");
}

TEST_CASE("needle corpus: enumeration cost tracks the needle position") {
  TempDir dir("needle");
  // Zero distractors: enumeration proves in round one.
  {
    std::ofstream out(dir.path / "zero.sx");
    out << needle_problem_text(1, 1);
  }
  RunConfig config;
  ResultLine line = run_solve_file((dir.path / "zero.sx").string(), config);
  CHECK(line.status == "PROVED");
  CHECK(line.rounds == 1);

  // The highest-age placement needs the most rounds of any placement.
  int max_pos_rounds = 0;
  for (int pos : {1, 3, 5}) {
    std::ofstream out(dir.path / "probe.sx");
    out << needle_problem_text(5, pos);
    out.close();
    ResultLine probe = run_solve_file((dir.path / "probe.sx").string(), config);
    REQUIRE(probe.status == "PROVED");
    CHECK(probe.rounds == pos);
    max_pos_rounds = std::max(max_pos_rounds, probe.rounds);
  }
  CHECK(max_pos_rounds == 5);
}

TEST_CASE("fixed seeds pin the needle run counts") {
  TempDir dir("pinned");
  NeedleCorpusSpec spec;
  spec.n_problems = 1;
  spec.n_distractors = 6;
  spec.seed = 41;
  auto paths = gen_needle_corpus(dir.str(), spec);
  RunConfig config;
  ResultLine enum_line = run_solve_file(paths[0], config);
  CHECK(enum_line.status == "PROVED");
  // Position drawn by seed 41 from [4,7]; observed once and frozen.
  CHECK(enum_line.rounds == 7);
  CHECK(enum_line.instantiation_count == 7);

  config.strategy = StrategyKind::EMatching;
  ResultLine ematch_line = run_solve_file(paths[0], config);
  CHECK(ematch_line.status == "PROVED");
  CHECK(ematch_line.rounds == 1);
  CHECK(ematch_line.instantiation_count == 7);
}

TEST_CASE("collection is deterministic byte-for-byte under a fixed seed") {
  TempDir dir("collect");
  NeedleCorpusSpec spec;
  spec.n_problems = 4;
  spec.n_distractors = 5;
  spec.seed = 11;
  gen_needle_corpus(dir.str(), spec);
  std::string d1 = (dir.path / "a.jsonl").string();
  std::string d2 = (dir.path / "b.jsonl").string();
  CollectSummary s1 = collect_corpus(dir.str(), d1, 10.0, 3);
  CollectSummary s2 = collect_corpus(dir.str(), d2, 10.0, 3);
  CHECK(s1.solved == 4);
  CHECK(s1.transitions == s2.transitions);
  CHECK(slurp(d1) == slurp(d2));
}

TEST_CASE("collecting an empty corpus writes a valid empty dataset") {
  TempDir dir("emptycorpus");
  std::string dataset = (dir.path / "d.jsonl").string();
  CollectSummary s = collect_corpus(dir.str(), dataset, 10.0, 0);
  CHECK(s.total == 0);
  CHECK(s.solved == 0);
  CHECK(s.transitions == 0);
  Dataset loaded = read_dataset(dataset);
  CHECK(loaded.transitions.empty());
}

TEST_CASE("collect skips unsolved problems but keeps going") {
  TempDir dir("partial");
  gen_needle_corpus(dir.str(), {2, 4, 19});
  {
    // A satisfiable problem: e-matching gives up without a proof.
    std::ofstream out(dir.path / "zzz_sat.sx");
    out << "(declare-sort S)\n(declare-fun p (S) Bool)\n"
           "(declare-fun q (S) Bool)\n(declare-fun c () S)\n"
           "(assert (p c))\n(assert-forall ((x S)) (q x))\n";
  }
  std::string dataset = (dir.path / "d.jsonl").string();
  CollectSummary s = collect_corpus(dir.str(), dataset, 10.0, 0);
  CHECK(s.total == 3);
  CHECK(s.solved == 2);
  REQUIRE(s.failures.size() == 1);
  CHECK(s.failures[0].find("zzz_sat") != std::string::npos);
}

TEST_CASE("eval: solved-set difference of a dominated strategy is zero") {
  TempDir dir("eval");
  gen_needle_corpus(dir.str(), {4, 5, 13});
  RunConfig enum_config;
  enum_config.label = "enum";
  RunConfig ematch_config;
  ematch_config.strategy = StrategyKind::EMatching;
  ematch_config.label = "ematch";
  EvalReport report =
      eval_corpus(dir.str(), {enum_config, ematch_config}, /*jobs=*/1);
  CHECK(report.solved_counts[0] == 4);
  CHECK(report.solved_counts[1] == 4);
  // enum solved set is a subset of ematch's here, so row enum column ematch
  // is zero.
  CHECK(report.set_difference[0][1] == 0);
  // e-matching does more instantiations per successful run.
  CHECK(report.median_instantiations[1] > report.median_instantiations[0]);
  std::string csv = report.csv_text();
  CHECK(csv.find("strategy,problem,status") == 0);
  CHECK(report.table_text().find("enum") != std::string::npos);
}

TEST_CASE("process workers and in-process evaluation agree") {
  TempDir dir("jobs");
  gen_needle_corpus(dir.str(), {6, 4, 17});
  RunConfig config;  // enumeration
  config.timeout_s = 30.0;
  EvalReport serial = eval_corpus(dir.str(), {config}, 1);
  EvalReport parallel = eval_corpus(dir.str(), {config}, 4, INSTGNN_CLI_PATH);
  REQUIRE(serial.problems == parallel.problems);
  for (size_t p = 0; p < serial.problems.size(); ++p) {
    CHECK(serial.results[0][p].status == parallel.results[0][p].status);
    CHECK(serial.results[0][p].instantiation_count ==
          parallel.results[0][p].instantiation_count);
  }
}

TEST_CASE("the training report carries the three headline metrics") {
  TempDir dir("trainrep");
  gen_needle_corpus(dir.str(), {6, 5, 23});
  std::string dataset = (dir.path / "d.jsonl").string();
  std::string weights = (dir.path / "w.bin").string();
  CollectSummary cs = collect_corpus(dir.str(), dataset, 10.0, 1);
  REQUIRE(cs.solved == 6);
  TrainSummary ts = train_dataset_file(dataset, weights, 10, 1, {8, 2});
  std::string report = train_summary_report(ts);
  CHECK(report.find("term top-1 accuracy") != std::string::npos);
  CHECK(report.find("scored above 0.5") != std::string::npos);
  CHECK(report.find("scored below 0.5") != std::string::npos);
  CHECK(fs::exists(weights));

  // The saved weights drive the guided strategies.
  RunConfig config;
  config.strategy = StrategyKind::DryRun;
  config.weights_path = weights;
  auto files = corpus_files(dir.str());
  // Skip the dataset/weight files; corpus_files only picks problem suffixes.
  REQUIRE(files.size() == 6);
  ResultLine line = run_solve_file(files[0], config);
  CHECK(line.status == "PROVED");
}
