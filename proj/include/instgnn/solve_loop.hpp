#pragma once

#include <vector>

#include "instgnn/ematch.hpp"
#include "instgnn/enum_inst.hpp"
#include "instgnn/ground_solver.hpp"
#include "instgnn/guidance.hpp"
#include "instgnn/parser.hpp"
#include "instgnn/proof_graph.hpp"

namespace instgnn {

enum class StrategyKind {
  Enumeration,
  EMatching,
  DryRun,
  RandomizedDryRun,
  QSampling,
  Threshold,
};

const char* strategy_name(StrategyKind s);
std::optional<StrategyKind> strategy_from_name(std::string_view name);
bool strategy_needs_weights(StrategyKind s);

struct SolveOptions {
  StrategyKind strategy = StrategyKind::Enumeration;
  GuidanceConfig guidance;                 // guided strategies
  const GnnParameters* params = nullptr;   // required for guided strategies
  double timeout_s = 10.0;
  int max_rounds = 0;                      // 0 = no round budget
  long decision_budget = kDefaultDecisionBudget;
  size_t ematch_cap_per_qe = kDefaultMatchCapPerQe;
};

struct RoundTrace {
  std::vector<InstEvent> insts;
};

enum class SolveOutcome { Proved, GaveUp, Timeout };

const char* outcome_name(SolveOutcome o);

struct SolveResult {
  SolveOutcome outcome = SolveOutcome::GaveUp;
  int rounds = 0;
  long long instantiation_count = 0;
  std::vector<RoundTrace> trace;  // per round, in order
  long long wall_micros = 0;
  long long gnn_micros = 0;
  GroundStatus last_ground_status = GroundStatus::SatCandidate;
};

/// Per-round event sink; trace collection subscribes here.
class SolveObserver {
 public:
  virtual ~SolveObserver() = default;
  virtual void on_round_start(int round_index, const Problem& problem,
                              const std::vector<Clause>& ground_clauses) {}
  virtual void on_lemma(int round_index, uint32_t qe_id,
                        const std::vector<TermId>& tuple,
                        const Clause& lemma) {}
  virtual void on_result(const SolveResult& result) {}
};

/// The round loop: alternates the instantiation strategy with the ground
/// solver until the ground set is unsatisfiable (Proved), a round adds
/// nothing new (GaveUp), or a time/resource limit is hit (Timeout).
/// Mutates the problem's term bank and the QEs' done-sets.
SolveResult solve(Problem& problem, const SolveOptions& options,
                  SolveObserver* observer = nullptr);

}  // namespace instgnn
