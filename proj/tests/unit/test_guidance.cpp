#include <algorithm>
#include <random>

#include "doctest.h"
#include "instgnn/guidance.hpp"
#include "instgnn/labeling.hpp"

using namespace instgnn;

namespace {

// Exhaustive reference for rank_tuples: score every tuple, sort by
// (score desc, tuple asc), drop done, take k.
std::vector<std::vector<TermId>> rank_by_enumeration(
    const std::vector<std::vector<double>>& probs,
    const std::vector<std::vector<TermId>>& cands,
    const std::set<std::vector<TermId>>& done, size_t k) {
  std::vector<std::pair<double, std::vector<TermId>>> scored;
  std::vector<size_t> idx(probs.size(), 0);
  while (true) {
    double score = 1.0;
    std::vector<TermId> tuple(probs.size());
    for (size_t v = 0; v < probs.size(); ++v) {
      score *= probs[v][idx[v]];
      tuple[v] = cands[v][idx[v]];
    }
    scored.push_back({score, std::move(tuple)});
    size_t i = idx.size();
    bool wrapped = true;
    while (i > 0) {
      --i;
      if (++idx[i] < probs[i].size()) {
        wrapped = false;
        break;
      }
      idx[i] = 0;
    }
    if (wrapped) break;
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::vector<TermId>> out;
  for (const auto& [score, tuple] : scored) {
    if (out.size() == k) break;
    if (!done.count(tuple)) out.push_back(tuple);
  }
  return out;
}

}  // namespace

TEST_CASE("QSampling includes certainty-one and excludes certainty-zero QEs") {
  GuidanceConfig config;
  config.mode = GuidanceMode::QSampling;
  std::mt19937_64 rng(0);
  for (int i = 0; i < 200; ++i) {
    auto sel = select_qes({1.0, 0.0}, config, rng);
    CHECK(sel[0]);
    CHECK(!sel[1]);
  }
}

TEST_CASE("threshold keeps scores at or above the cutoff") {
  GuidanceConfig config;
  config.mode = GuidanceMode::Threshold;
  config.threshold = 1e-5;
  std::mt19937_64 rng(0);
  auto sel = select_qes({0.9, 2e-5, 1e-6}, config, rng);
  CHECK(sel == std::vector<bool>{true, true, false});
}

TEST_CASE("dry runs select everything") {
  GuidanceConfig config;
  config.mode = GuidanceMode::DryRun;
  std::mt19937_64 rng(0);
  auto sel = select_qes({0.0, 1e-9}, config, rng);
  CHECK(sel == std::vector<bool>{true, true});
}

TEST_CASE("rank_tuples: worked two-variable example") {
  std::vector<std::vector<double>> probs{{0.9, 0.1}, {0.6, 0.4}};
  std::vector<std::vector<TermId>> cands{{10, 11}, {20, 21}};
  auto top = rank_tuples(probs, cands, {}, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0] == std::vector<TermId>{10, 20});  // 0.54
  CHECK(top[1] == std::vector<TermId>{10, 21});  // 0.36
}

TEST_CASE("rank_tuples: k=1 with one variable is the argmax term") {
  std::vector<std::vector<double>> probs{{0.2, 0.5, 0.3}};
  std::vector<std::vector<TermId>> cands{{5, 6, 7}};
  auto top = rank_tuples(probs, cands, {}, 1);
  REQUIRE(top.size() == 1);
  CHECK(top[0] == std::vector<TermId>{6});
}

TEST_CASE("rank_tuples: exhausted tuple space returns nothing") {
  std::vector<std::vector<double>> probs{{0.7, 0.3}};
  std::vector<std::vector<TermId>> cands{{1, 2}};
  std::set<std::vector<TermId>> done{{1}, {2}};
  CHECK(rank_tuples(probs, cands, done, 3).empty());
}

TEST_CASE("rank_tuples equals exhaustive enumeration on random inputs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    size_t n_vars = 1 + rng() % 3;
    std::vector<std::vector<double>> probs(n_vars);
    std::vector<std::vector<TermId>> cands(n_vars);
    TermId next_term = 0;
    for (size_t v = 0; v < n_vars; ++v) {
      size_t m = 1 + rng() % 4;
      double sum = 0;
      for (size_t i = 0; i < m; ++i) {
        double w = 1 + rng() % 8;
        probs[v].push_back(w);
        sum += w;
        cands[v].push_back(next_term++);
      }
      for (double& p : probs[v]) p /= sum;
    }
    std::set<std::vector<TermId>> done;
    // Mark a few random tuples done.
    for (int i = 0; i < 2; ++i) {
      std::vector<TermId> tuple;
      for (size_t v = 0; v < n_vars; ++v) {
        tuple.push_back(cands[v][rng() % cands[v].size()]);
      }
      done.insert(tuple);
    }
    size_t k = 1 + rng() % 6;
    CAPTURE(trial);
    REQUIRE(rank_tuples(probs, cands, done, k) ==
            rank_by_enumeration(probs, cands, done, k));
  }
}

TEST_CASE("the k=1 tuple set is a subset of the k=10 set") {
  std::mt19937_64 rng(32);
  std::vector<std::vector<double>> probs{{0.5, 0.2, 0.3}, {0.6, 0.4}};
  std::vector<std::vector<TermId>> cands{{1, 2, 3}, {4, 5}};
  auto top1 = rank_tuples(probs, cands, {}, 1);
  auto top10 = rank_tuples(probs, cands, {}, 10);
  for (const auto& t : top1) {
    CHECK(std::find(top10.begin(), top10.end(), t) != top10.end());
  }
}

TEST_CASE("scaling one variable's scores preserves the output order") {
  std::vector<std::vector<double>> probs{{0.5, 0.2, 0.3}, {0.6, 0.4}};
  std::vector<std::vector<TermId>> cands{{1, 2, 3}, {4, 5}};
  auto base = rank_tuples(probs, cands, {}, 6);
  for (double& p : probs[0]) p *= 3.7;
  auto scaled = rank_tuples(probs, cands, {}, 6);
  CHECK(base == scaled);
}

TEST_CASE("guided round: dry run follows enumeration exactly") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-fun p (S) Bool)\n"
      "(declare-fun q (S) Bool)\n"
      "(declare-fun f (S) S)\n"
      "(declare-fun c () S)\n"
      "(assert (p c))\n"
      "(assert-forall ((x S)) (q (f x)))\n");
  REQUIRE(r.ok());
  Problem problem = std::move(*r.problem);
  ProofStateGraph graph =
      export_graph(problem.bank, problem.ground_clauses, problem.qes, 1);
  GnnParameters params = GnnParameters::init({8, 2}, 55);
  GuidanceConfig config;
  config.mode = GuidanceMode::DryRun;
  std::mt19937_64 rng(0);
  long long micros = 0;
  auto guided =
      guided_round(problem.bank, problem.qes, graph, params, config, rng,
                   &micros);
  auto plain = enum_round(problem.bank, problem.qes);
  REQUIRE(guided.size() == plain.size());
  for (size_t i = 0; i < guided.size(); ++i) {
    CHECK(guided[i].qe_id == plain[i].qe_id);
    CHECK(guided[i].tuple == plain[i].tuple);
  }
}

TEST_CASE("guided round: threshold zero selects every feasible QE") {
  auto r = parse_native(
      "(declare-sort S)\n"
      "(declare-sort T)\n"
      "(declare-fun p (S) Bool)\n"
      "(declare-fun q (T) Bool)\n"
      "(declare-fun c () S)\n"
      "(assert (p c))\n"
      "(assert-forall ((x S)) (not (p x)))\n"
      "(assert-forall ((y T)) (q y))\n");
  REQUIRE(r.ok());
  Problem problem = std::move(*r.problem);
  ProofStateGraph graph =
      export_graph(problem.bank, problem.ground_clauses, problem.qes, 1);
  GnnParameters params = GnnParameters::init({8, 2}, 56);
  GuidanceConfig config;
  config.mode = GuidanceMode::Threshold;
  config.threshold = 0.0;
  std::mt19937_64 rng(0);
  auto events =
      guided_round(problem.bank, problem.qes, graph, params, config, rng,
                   nullptr);
  // The S-sorted QE fires; the T-sorted one is skipped (no candidates).
  REQUIRE(events.size() == 1);
  CHECK(events[0].qe_id == 0);
  // It never repeats a done tuple.
  problem.qes[0].done_instantiations.insert(events[0].tuple);
  auto again =
      guided_round(problem.bank, problem.qes, graph, params, config, rng,
                   nullptr);
  CHECK(again.empty());
}
