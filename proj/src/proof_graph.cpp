#include "instgnn/proof_graph.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace instgnn {

bool ProofStateGraph::structurally_equal(const ProofStateGraph& other) const {
  return node_kinds == other.node_kinds && edges == other.edges &&
         qe_nodes == other.qe_nodes && var_nodes == other.var_nodes &&
         candidates == other.candidates && round_index == other.round_index;
}

namespace {

void reach(const TermBank& bank, TermId t, std::unordered_set<TermId>& seen) {
  if (!seen.insert(t).second) return;
  for (TermId c : bank.term(t).children) reach(bank, c, seen);
}

}  // namespace

ProofStateGraph export_graph(const TermBank& bank,
                             const std::vector<Clause>& ground_clauses,
                             const std::vector<QuantifiedExpression>& qes,
                             int round_index) {
  std::unordered_set<TermId> seen;
  for (const Clause& c : ground_clauses) {
    if (c.formula == kNoTerm) {
      throw TermError("clause was never interned");
    }
    reach(bank, c.formula, seen);
  }
  for (const QuantifiedExpression& qe : qes) {
    if (qe.formula == kNoTerm) {
      throw TermError("QE was never interned");
    }
    reach(bank, qe.formula, seen);
  }

  ProofStateGraph g;
  g.round_index = round_index;
  g.node_terms.assign(seen.begin(), seen.end());
  std::sort(g.node_terms.begin(), g.node_terms.end());  // age order

  std::unordered_map<TermId, int> index;
  index.reserve(g.node_terms.size());
  for (size_t i = 0; i < g.node_terms.size(); ++i) {
    index.emplace(g.node_terms[i], static_cast<int>(i));
  }

  g.node_kinds.reserve(g.node_terms.size());
  for (TermId t : g.node_terms) g.node_kinds.push_back(bank.term(t).kind);

  for (size_t u = 0; u < g.node_terms.size(); ++u) {
    const TermData& d = bank.term(g.node_terms[u]);
    for (size_t k = 0; k < d.children.size(); ++k) {
      int v = index.at(d.children[k]);
      int type = static_cast<int>(std::min<size_t>(k, 4));
      g.edges.push_back({static_cast<int>(u), v, type});
      g.edges.push_back({v, static_cast<int>(u), type + 5});
    }
  }

  for (const QuantifiedExpression& qe : qes) {
    g.qe_nodes.push_back(index.at(qe.formula));
    std::vector<int> vars;
    std::vector<std::vector<int>> cand;
    for (TermId v : qe.variables) {
      vars.push_back(index.at(v));
      std::vector<int> list;
      for (TermId t : bank.ground_terms_of_sort(bank.term(v).sort)) {
        auto it = index.find(t);
        if (it != index.end()) list.push_back(it->second);
      }
      cand.push_back(std::move(list));
    }
    g.var_nodes.push_back(std::move(vars));
    g.candidates.push_back(std::move(cand));
  }
  return g;
}

}  // namespace instgnn
