#pragma once

#include <optional>
#include <vector>

#include "instgnn/egraph.hpp"
#include "instgnn/term_bank.hpp"

namespace instgnn {

enum class GroundStatus { Unsat, SatCandidate, ResourceOut };

/// One total assignment of the clause atoms together with the e-graph induced
/// by the equalities it sets true. The e-graph covers every ground value/atom
/// term of the bank so that e-matching can run against it directly.
struct GroundModel {
  std::vector<TermId> atoms;       // distinct atoms, first-occurrence order
  std::vector<bool> values;        // aligned with atoms
  EGraph egraph;

  std::optional<bool> value_of(TermId atom) const;
};

struct GroundCheckResult {
  GroundStatus status;
  std::vector<size_t> core;  // clause indices witnessing Unsat
  std::optional<GroundModel> model;
};

inline constexpr long kDefaultDecisionBudget = 1'000'000;

/// Decides satisfiability of ground clauses modulo equality (EUF).
/// DPLL over the atom abstraction; every total assignment is checked for
/// congruence-closure consistency, and inconsistent ones are blocked by a
/// clause over the current decisions.
GroundCheckResult ground_sat_check(const TermBank& bank,
                                   const std::vector<Clause>& clauses,
                                   long decision_budget = kDefaultDecisionBudget);

/// E-graph over all ground value/atom terms of the bank, with the model's
/// true equalities merged in.
EGraph build_model_egraph(const TermBank& bank, const GroundModel& model);

}  // namespace instgnn
