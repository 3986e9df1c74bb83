#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "instgnn/proof_graph.hpp"
#include "instgnn/transitions.hpp"

namespace instgnn {

struct GnnConfig {
  int embedding_size = 64;  // K
  int layers = 10;          // L
};

/// All trainable tensors. Held in doubles in memory; serialized as 32-bit
/// floats. Gradients and Adam moments reuse this struct (zeros_like).
struct GnnParameters {
  int K = 0;
  int L = 0;
  std::vector<double> kind_emb;               // kNumKinds x K
  std::vector<double> edge_vec;               // kNumEdgeTypes x K
  std::vector<std::vector<double>> layer_w;   // L of K x 2K, row-major
  std::vector<std::vector<double>> layer_b;   // L of K
  std::vector<double> qe_head_w;              // K
  std::vector<double> qe_head_b;              // 1
  std::vector<double> var_proj;               // K x K, row-major
  std::vector<double> term_proj;              // K x K, row-major

  /// Seeded initialization: embeddings and edge vectors uniform(-0.1, 0.1),
  /// matrices Xavier-uniform, biases zero.
  static GnnParameters init(const GnnConfig& config, uint64_t seed);
  static GnnParameters zeros_like(const GnnParameters& shape);

  struct TensorRef {
    std::string name;
    std::vector<double>* data;
    std::vector<int> shape;
  };
  std::vector<TensorRef> tensors();
  size_t parameter_count() const;
};

/// Incoming-edge adjacency in edge-list order, flattened per node.
struct GraphAdjacency {
  std::vector<int> offsets;  // num_nodes + 1
  std::vector<int> src;
  std::vector<int> type;

  static GraphAdjacency build(const ProofStateGraph& graph);
};

struct GnnOutputs {
  std::vector<double> qe_logits;
  std::vector<double> qe_scores;  // sigmoid(logits)
  // Per QE, per variable: logits / softmax over the candidate list.
  std::vector<std::vector<std::vector<double>>> term_logits;
  std::vector<std::vector<std::vector<double>>> term_probs;
  std::vector<double> final_embeddings;  // num_nodes x K
};

/// Intermediate activations kept for the backward pass.
struct ForwardCache {
  std::vector<std::vector<double>> x;          // L+1 of n*K
  std::vector<std::vector<double>> concat;     // L of n*2K (mean || max)
  std::vector<std::vector<uint8_t>> relu_on;   // L of n*K
  // Index into the node's incoming-edge list that attained the max, -1 when
  // the node has no incoming edges; first index wins ties.
  std::vector<std::vector<int>> argmax;        // L of n*K
};

GnnOutputs gnn_forward(const GnnParameters& params,
                       const ProofStateGraph& graph,
                       const GraphAdjacency& adj,
                       ForwardCache* cache = nullptr);

inline GnnOutputs gnn_forward(const GnnParameters& params,
                              const ProofStateGraph& graph) {
  return gnn_forward(params, graph, GraphAdjacency::build(graph));
}

struct LossBreakdown {
  double total = 0;
  double qe_bce = 0;
  double term_ce = 0;
  int n_qes = 0;
  int n_labeled_vars = 0;
};

LossBreakdown gnn_loss(const GnnParameters& params, const Transition& t);

/// Exact reverse-mode gradient of gnn_loss, accumulated into grad.
LossBreakdown gnn_loss_and_grad(const GnnParameters& params,
                                const Transition& t, GnnParameters& grad);

struct TrainOptions {
  int iterations = 150;
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  uint64_t seed = 0;
};

struct TrainLog {
  std::vector<double> loss_per_iteration;  // mean batch loss
};

/// One Adam step per iteration on the mean gradient of a batch holding one
/// uniformly sampled transition per training problem.
TrainLog gnn_train(GnnParameters& params,
                   const std::vector<Transition>& transitions,
                   const TrainOptions& options);

struct GuidanceMetrics {
  double term_top1_accuracy = 0;  // argmax prob hits the labeled term
  double qe_tpr = 0;              // useful QEs scored above 0.5
  double qe_tnr = 0;              // non-useful QEs scored below 0.5
  int n_labeled_vars = 0;
  int n_useful_qes = 0;
  int n_other_qes = 0;
};

GuidanceMetrics gnn_metrics(const GnnParameters& params,
                            const std::vector<Transition>& transitions);

class GnnIoError : public std::runtime_error {
 public:
  explicit GnnIoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Weight file: one-line JSON manifest (format version, K, L, kind
/// vocabulary, edge type count, tensor index), then raw little-endian
/// float32 arrays in manifest order.
void save_params(const GnnParameters& params, const std::string& path);
GnnParameters load_params(const std::string& path);

}  // namespace instgnn
