#pragma once

#include <vector>

#include "instgnn/egraph.hpp"
#include "instgnn/enum_inst.hpp"
#include "instgnn/term_bank.hpp"

namespace instgnn {

/// A single- or multi-pattern trigger; the patterns jointly contain every
/// variable of the QE.
struct Trigger {
  uint32_t qe_id;
  std::vector<TermId> patterns;
};

/// Heuristic trigger selection: all minimal-depth application subterms of the
/// body that cover the QE's variables (predicate applications preferred over
/// function subterms at equal depth); if no single subterm covers them, one
/// greedily chosen multi-pattern. Empty when the variables cannot be covered.
std::vector<Trigger> select_triggers(const TermBank& bank,
                                     const QuantifiedExpression& qe);

/// All substitutions (as tuples aligned with qe.variables) built from
/// registered ground terms under which every pattern of the trigger is
/// congruent to an existing ground term. Sorted and duplicate-free.
std::vector<std::vector<TermId>> ematch(const TermBank& bank, const EGraph& eg,
                                        const QuantifiedExpression& qe,
                                        const Trigger& trigger);

inline constexpr size_t kDefaultMatchCapPerQe = 1000;

/// One e-matching round: the union over all triggers of all QEs of the new
/// (not yet done) matches, capped per QE.
std::vector<InstEvent> ematch_round(const TermBank& bank, const EGraph& eg,
                                    const std::vector<QuantifiedExpression>& qes,
                                    size_t cap_per_qe = kDefaultMatchCapPerQe);

}  // namespace instgnn
