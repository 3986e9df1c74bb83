#include "instgnn/enum_inst.hpp"

namespace instgnn {

std::vector<std::vector<TermId>> candidate_lists(
    const TermBank& bank, const QuantifiedExpression& qe) {
  std::vector<std::vector<TermId>> lists;
  lists.reserve(qe.variables.size());
  for (TermId v : qe.variables) {
    lists.push_back(bank.ground_terms_of_sort(bank.term(v).sort));
  }
  return lists;
}

std::optional<std::vector<TermId>> enum_next_tuple_over(
    const std::vector<std::vector<TermId>>& lists,
    const std::set<std::vector<TermId>>& done) {
  if (lists.empty()) return std::nullopt;
  for (const auto& list : lists) {
    if (list.empty()) return std::nullopt;
  }
  std::vector<size_t> idx(lists.size(), 0);
  std::vector<TermId> tuple(lists.size());
  while (true) {
    for (size_t i = 0; i < lists.size(); ++i) tuple[i] = lists[i][idx[i]];
    if (!done.count(tuple)) return tuple;
    // Advance the odometer; the last variable varies fastest.
    size_t i = lists.size();
    while (i > 0) {
      --i;
      if (++idx[i] < lists[i].size()) break;
      idx[i] = 0;
      if (i == 0) return std::nullopt;  // wrapped past the first variable
    }
  }
}

std::optional<std::vector<TermId>> enum_next_tuple(
    const TermBank& bank, const QuantifiedExpression& qe) {
  return enum_next_tuple_over(candidate_lists(bank, qe),
                              qe.done_instantiations);
}

std::vector<InstEvent> enum_round(
    const TermBank& bank, const std::vector<QuantifiedExpression>& qes) {
  std::vector<InstEvent> events;
  for (const QuantifiedExpression& qe : qes) {
    if (auto tuple = enum_next_tuple(bank, qe)) {
      events.push_back({qe.qe_id, std::move(*tuple)});
    }
  }
  return events;
}

}  // namespace instgnn
