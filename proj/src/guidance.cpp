#include "instgnn/guidance.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <set>

namespace instgnn {

std::vector<bool> select_qes(const std::vector<double>& qe_scores,
                             const GuidanceConfig& config,
                             std::mt19937_64& rng) {
  std::vector<bool> selected(qe_scores.size(), true);
  switch (config.mode) {
    case GuidanceMode::DryRun:
    case GuidanceMode::RandomizedDryRun:
      break;
    case GuidanceMode::QSampling:
      for (size_t q = 0; q < qe_scores.size(); ++q) {
        double u = (rng() >> 11) * 0x1.0p-53;  // uniform in [0,1)
        selected[q] = u < qe_scores[q];
      }
      break;
    case GuidanceMode::Threshold:
      for (size_t q = 0; q < qe_scores.size(); ++q) {
        selected[q] = qe_scores[q] >= config.threshold;
      }
      break;
  }
  return selected;
}

namespace {

struct FrontierEntry {
  double score;
  std::vector<TermId> tuple;   // original candidate ids (for tie-breaks)
  std::vector<size_t> ranks;   // positions in the per-variable rankings

  // Max-heap on score; equal scores prefer the lexicographically smaller
  // original tuple.
  bool operator<(const FrontierEntry& other) const {
    if (score != other.score) return score < other.score;
    return tuple > other.tuple;
  }
};

}  // namespace

std::vector<std::vector<TermId>> rank_tuples(
    const std::vector<std::vector<double>>& probs,
    const std::vector<std::vector<TermId>>& candidate_terms,
    const std::set<std::vector<TermId>>& done, size_t k) {
  const size_t n = probs.size();
  if (n == 0 || k == 0) return {};
  // Per variable: candidate positions sorted by descending probability,
  // then ascending candidate index.
  std::vector<std::vector<size_t>> order(n);
  for (size_t v = 0; v < n; ++v) {
    if (candidate_terms[v].empty()) return {};
    order[v].resize(candidate_terms[v].size());
    for (size_t i = 0; i < order[v].size(); ++i) order[v][i] = i;
    std::stable_sort(order[v].begin(), order[v].end(),
                     [&](size_t a, size_t b) {
                       if (probs[v][a] != probs[v][b]) {
                         return probs[v][a] > probs[v][b];
                       }
                       return a < b;
                     });
  }

  auto make_entry = [&](std::vector<size_t> ranks) {
    FrontierEntry e;
    e.score = 1.0;
    e.tuple.resize(n);
    for (size_t v = 0; v < n; ++v) {
      size_t cand = order[v][ranks[v]];
      e.score *= probs[v][cand];
      e.tuple[v] = candidate_terms[v][cand];
    }
    e.ranks = std::move(ranks);
    return e;
  };

  std::priority_queue<FrontierEntry> frontier;
  std::set<std::vector<size_t>> visited;
  std::vector<size_t> start(n, 0);
  visited.insert(start);
  frontier.push(make_entry(start));

  std::vector<std::vector<TermId>> out;
  while (!frontier.empty() && out.size() < k) {
    FrontierEntry e = frontier.top();
    frontier.pop();
    if (!done.count(e.tuple)) out.push_back(e.tuple);
    for (size_t v = 0; v < n; ++v) {
      if (e.ranks[v] + 1 >= order[v].size()) continue;
      std::vector<size_t> next = e.ranks;
      ++next[v];
      if (visited.insert(next).second) frontier.push(make_entry(next));
    }
  }
  return out;
}

std::vector<InstEvent> guided_round(const TermBank& bank,
                                    const std::vector<QuantifiedExpression>& qes,
                                    const ProofStateGraph& graph,
                                    const GnnParameters& params,
                                    const GuidanceConfig& config,
                                    std::mt19937_64& rng,
                                    long long* gnn_micros) {
  auto t0 = std::chrono::steady_clock::now();
  GnnOutputs out = gnn_forward(params, graph);
  auto t1 = std::chrono::steady_clock::now();
  if (gnn_micros) {
    *gnn_micros +=
        std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
  }

  if (config.mode == GuidanceMode::DryRun) {
    return enum_round(bank, qes);
  }
  if (config.mode == GuidanceMode::RandomizedDryRun) {
    std::vector<InstEvent> events;
    for (const QuantifiedExpression& qe : qes) {
      auto lists = candidate_lists(bank, qe);
      for (auto& list : lists) {
        for (size_t i = list.size(); i > 1; --i) {
          std::swap(list[i - 1], list[rng() % i]);
        }
      }
      if (auto tuple = enum_next_tuple_over(lists, qe.done_instantiations)) {
        events.push_back({qe.qe_id, std::move(*tuple)});
      }
    }
    return events;
  }

  std::vector<bool> selected = select_qes(out.qe_scores, config, rng);
  std::vector<InstEvent> events;
  for (size_t q = 0; q < qes.size(); ++q) {
    if (!selected[q]) continue;
    const QuantifiedExpression& qe = qes[q];
    // Candidate term ids in graph order (ascending age), per variable.
    std::vector<std::vector<TermId>> cand_terms(qe.variables.size());
    bool feasible = true;
    for (size_t v = 0; v < qe.variables.size(); ++v) {
      const auto& nodes = graph.candidates[q][v];
      if (nodes.empty()) {
        feasible = false;  // no ground term of this sort yet
        break;
      }
      cand_terms[v].reserve(nodes.size());
      for (int node : nodes) cand_terms[v].push_back(graph.node_terms[node]);
    }
    if (!feasible) continue;
    auto tuples =
        rank_tuples(out.term_probs[q], cand_terms, qe.done_instantiations,
                    static_cast<size_t>(config.max_inst_per_qe));
    for (auto& tuple : tuples) {
      events.push_back({qe.qe_id, std::move(tuple)});
    }
  }
  return events;
}

}  // namespace instgnn
