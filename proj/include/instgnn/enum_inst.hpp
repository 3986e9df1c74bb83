#pragma once

#include <optional>
#include <vector>

#include "instgnn/term_bank.hpp"

namespace instgnn {

struct InstEvent {
  uint32_t qe_id;
  std::vector<TermId> tuple;  // aligned with the QE's variable list
};

/// Age-ascending ground candidate list for each variable of the QE.
std::vector<std::vector<TermId>> candidate_lists(const TermBank& bank,
                                                 const QuantifiedExpression& qe);

/// Least not-yet-done tuple in the age-lexicographic order over the given
/// candidate lists (last variable varies fastest); nullopt when exhausted or
/// when some list is empty.
std::optional<std::vector<TermId>> enum_next_tuple_over(
    const std::vector<std::vector<TermId>>& lists,
    const std::set<std::vector<TermId>>& done);

/// Same, with candidate lists taken from the bank (the age heuristic).
std::optional<std::vector<TermId>> enum_next_tuple(
    const TermBank& bank, const QuantifiedExpression& qe);

/// One round of enumerative instantiation: at most one new tuple per QE.
std::vector<InstEvent> enum_round(const TermBank& bank,
                                  const std::vector<QuantifiedExpression>& qes);

}  // namespace instgnn
