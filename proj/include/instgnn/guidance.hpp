#pragma once

#include <random>
#include <vector>

#include "instgnn/enum_inst.hpp"
#include "instgnn/gnn.hpp"

namespace instgnn {

enum class GuidanceMode { DryRun, RandomizedDryRun, QSampling, Threshold };

struct GuidanceConfig {
  GuidanceMode mode = GuidanceMode::Threshold;
  double threshold = 1e-5;
  int max_inst_per_qe = 1;
  uint64_t rng_seed = 0;
};

/// QE selection from the head scores: QSampling draws u < score, Threshold
/// keeps score >= threshold, the dry-run modes keep everything.
std::vector<bool> select_qes(const std::vector<double>& qe_scores,
                             const GuidanceConfig& config,
                             std::mt19937_64& rng);

/// Exact top-k tuples by product of per-variable probabilities, skipping done
/// tuples; ties broken by lexicographic candidate index. Best-first frontier
/// expansion over the per-variable rankings.
std::vector<std::vector<TermId>> rank_tuples(
    const std::vector<std::vector<double>>& probs,
    const std::vector<std::vector<TermId>>& candidate_terms,
    const std::set<std::vector<TermId>>& done, size_t k);

/// One guided round. Dry-run modes compute the forward pass (timed into
/// gnn_ms) and then follow plain enumeration, with per-variable candidate
/// lists shuffled for the randomized variant.
std::vector<InstEvent> guided_round(const TermBank& bank,
                                    const std::vector<QuantifiedExpression>& qes,
                                    const ProofStateGraph& graph,
                                    const GnnParameters& params,
                                    const GuidanceConfig& config,
                                    std::mt19937_64& rng,
                                    long long* gnn_micros);

}  // namespace instgnn
