#pragma once

#include <vector>

#include "instgnn/parser.hpp"
#include "instgnn/term_bank.hpp"

namespace instgnn {

inline constexpr int kNumEdgeTypes = 10;  // 0..4 forward, 5..9 reverse

struct GraphEdge {
  int src;
  int dst;
  int type;

  bool operator==(const GraphEdge&) const = default;
};

/// Snapshot of one solver round as a typed bidirectional graph over the term
/// DAG of all asserted clauses and QEs. Node indices follow term age, so the
/// encoding is deterministic for a given round state.
struct ProofStateGraph {
  std::vector<Kind> node_kinds;
  std::vector<GraphEdge> edges;
  std::vector<int> qe_nodes;                   // aligned with the QE list
  std::vector<std::vector<int>> var_nodes;     // per QE, binder order
  // Per QE, per variable: ground terms of the variable's sort, ascending age.
  std::vector<std::vector<std::vector<int>>> candidates;
  int round_index = 0;

  // In-memory only (not serialized): term behind each node.
  std::vector<TermId> node_terms;

  size_t num_nodes() const { return node_kinds.size(); }
  bool structurally_equal(const ProofStateGraph& other) const;
};

/// Exports the current proof state: all terms reachable from the asserted
/// ground clauses and QEs.
ProofStateGraph export_graph(const TermBank& bank,
                             const std::vector<Clause>& ground_clauses,
                             const std::vector<QuantifiedExpression>& qes,
                             int round_index);

}  // namespace instgnn
