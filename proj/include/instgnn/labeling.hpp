#pragma once

#include <vector>

#include "instgnn/solve_loop.hpp"
#include "instgnn/transitions.hpp"

namespace instgnn {

/// Greedy trace minimization: replays the proved trace deleting
/// instantiations last-to-first, keeping a deletion whenever the final ground
/// set stays unsatisfiable. Returns the surviving (useful) instantiations.
std::vector<InstEvent> minimize_trace(Problem& problem,
                                      const SolveResult& result,
                                      long decision_budget = kDefaultDecisionBudget);

/// Builds one labeled Transition per round of a proved run: a QE is useful in
/// a round when some minimized instantiation for it has all its terms already
/// present in that round's graph and was not performed in an earlier round;
/// one such tuple is chosen uniformly at random for the term labels.
std::vector<Transition> label_transitions(
    Problem& problem, const SolveResult& result,
    const std::vector<ProofStateGraph>& round_graphs, uint64_t seed);

/// Observer that exports the proof-state graph at every round start.
class GraphRecorder : public SolveObserver {
 public:
  void on_round_start(int round_index, const Problem& problem,
                      const std::vector<Clause>& ground_clauses) override {
    graphs_.push_back(
        export_graph(problem.bank, ground_clauses, problem.qes, round_index));
  }

  const std::vector<ProofStateGraph>& graphs() const { return graphs_; }

 private:
  std::vector<ProofStateGraph> graphs_;
};

}  // namespace instgnn
