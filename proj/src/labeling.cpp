#include "instgnn/labeling.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

namespace instgnn {

std::vector<InstEvent> minimize_trace(Problem& problem,
                                      const SolveResult& result,
                                      long decision_budget) {
  if (result.outcome != SolveOutcome::Proved) {
    throw TermError("cannot minimize a trace that did not prove");
  }
  std::vector<InstEvent> flat;
  for (const RoundTrace& round : result.trace) {
    flat.insert(flat.end(), round.insts.begin(), round.insts.end());
  }
  std::vector<bool> kept(flat.size(), true);

  auto unsat_with_kept = [&] {
    std::vector<Clause> ground = problem.ground_clauses;
    for (size_t i = 0; i < flat.size(); ++i) {
      if (!kept[i]) continue;
      ground.push_back(
          apply_tuple(problem.bank, problem.qes[flat[i].qe_id], flat[i].tuple));
    }
    return ground_sat_check(problem.bank, ground, decision_budget).status ==
           GroundStatus::Unsat;
  };

  for (size_t i = flat.size(); i > 0; --i) {
    kept[i - 1] = false;
    if (!unsat_with_kept()) kept[i - 1] = true;
  }

  std::vector<InstEvent> useful;
  for (size_t i = 0; i < flat.size(); ++i) {
    if (kept[i]) useful.push_back(flat[i]);
  }
  return useful;
}

std::vector<Transition> label_transitions(
    Problem& problem, const SolveResult& result,
    const std::vector<ProofStateGraph>& round_graphs, uint64_t seed) {
  std::vector<InstEvent> useful = minimize_trace(problem, result);

  // Useful tuples per QE.
  std::vector<std::vector<std::vector<TermId>>> useful_by_qe(
      problem.qes.size());
  for (const InstEvent& ev : useful) {
    useful_by_qe[ev.qe_id].push_back(ev.tuple);
  }

  std::mt19937_64 rng(seed);
  std::vector<Transition> transitions;
  // Tuples performed in rounds strictly before the one being labeled.
  std::vector<std::set<std::vector<TermId>>> performed(problem.qes.size());

  for (size_t r = 0; r < round_graphs.size(); ++r) {
    const ProofStateGraph& graph = round_graphs[r];
    Transition t;
    t.graph = graph;
    t.problem_name = problem.name;
    t.round_index = graph.round_index;
    t.qe_labels.assign(problem.qes.size(), 0);
    t.term_labels.assign(problem.qes.size(), {});

    for (size_t q = 0; q < problem.qes.size(); ++q) {
      // A tuple is available when each element appears in the candidate list
      // of the corresponding variable in this round's graph.
      std::vector<std::vector<TermId>> options;
      for (const std::vector<TermId>& tuple : useful_by_qe[q]) {
        if (performed[q].count(tuple)) continue;
        bool available = true;
        std::vector<int> indices(tuple.size());
        for (size_t v = 0; v < tuple.size() && available; ++v) {
          const auto& cand_nodes = graph.candidates[q][v];
          available = false;
          for (size_t i = 0; i < cand_nodes.size(); ++i) {
            if (graph.node_terms[cand_nodes[i]] == tuple[v]) {
              indices[v] = static_cast<int>(i);
              available = true;
              break;
            }
          }
        }
        if (available) options.push_back(tuple);
      }
      if (options.empty()) continue;
      const std::vector<TermId>& pick = options[rng() % options.size()];
      t.qe_labels[q] = 1;
      std::vector<int> labels(pick.size());
      for (size_t v = 0; v < pick.size(); ++v) {
        const auto& cand_nodes = graph.candidates[q][v];
        for (size_t i = 0; i < cand_nodes.size(); ++i) {
          if (graph.node_terms[cand_nodes[i]] == pick[v]) {
            labels[v] = static_cast<int>(i);
            break;
          }
        }
      }
      t.term_labels[q] = std::move(labels);
    }
    transitions.push_back(std::move(t));

    // This round's instantiations become unavailable as labels later on.
    if (r < result.trace.size()) {
      for (const InstEvent& ev : result.trace[r].insts) {
        performed[ev.qe_id].insert(ev.tuple);
      }
    }
  }
  return transitions;
}

}  // namespace instgnn
