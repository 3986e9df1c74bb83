#include "instgnn/gnn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <unordered_map>

#include "json.hpp"

namespace instgnn {

using nlohmann::json;

GnnParameters GnnParameters::init(const GnnConfig& config, uint64_t seed) {
  const int K = config.embedding_size;
  const int L = config.layers;
  GnnParameters p;
  p.K = K;
  p.L = L;
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    // Portable uniform draw; resolution of 2^-53 is plenty here.
    double u = (rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  };
  auto fill_uniform = [&](std::vector<double>& v, size_t n, double limit) {
    v.resize(n);
    for (double& x : v) x = uniform(-limit, limit);
  };
  auto xavier = [&](int fan_in, int fan_out) {
    return std::sqrt(6.0 / (fan_in + fan_out));
  };

  fill_uniform(p.kind_emb, static_cast<size_t>(kNumKinds) * K, 0.1);
  fill_uniform(p.edge_vec, static_cast<size_t>(kNumEdgeTypes) * K, 0.1);
  p.layer_w.resize(L);
  p.layer_b.resize(L);
  for (int l = 0; l < L; ++l) {
    fill_uniform(p.layer_w[l], static_cast<size_t>(K) * 2 * K,
                 xavier(2 * K, K));
    p.layer_b[l].assign(K, 0.0);
  }
  fill_uniform(p.qe_head_w, K, xavier(K, 1));
  p.qe_head_b.assign(1, 0.0);
  fill_uniform(p.var_proj, static_cast<size_t>(K) * K, xavier(K, K));
  fill_uniform(p.term_proj, static_cast<size_t>(K) * K, xavier(K, K));
  return p;
}

GnnParameters GnnParameters::zeros_like(const GnnParameters& shape) {
  GnnParameters p;
  p.K = shape.K;
  p.L = shape.L;
  p.kind_emb.assign(shape.kind_emb.size(), 0.0);
  p.edge_vec.assign(shape.edge_vec.size(), 0.0);
  p.layer_w.resize(shape.L);
  p.layer_b.resize(shape.L);
  for (int l = 0; l < shape.L; ++l) {
    p.layer_w[l].assign(shape.layer_w[l].size(), 0.0);
    p.layer_b[l].assign(shape.layer_b[l].size(), 0.0);
  }
  p.qe_head_w.assign(shape.qe_head_w.size(), 0.0);
  p.qe_head_b.assign(1, 0.0);
  p.var_proj.assign(shape.var_proj.size(), 0.0);
  p.term_proj.assign(shape.term_proj.size(), 0.0);
  return p;
}

std::vector<GnnParameters::TensorRef> GnnParameters::tensors() {
  std::vector<TensorRef> refs;
  refs.push_back({"kind_embeddings", &kind_emb, {kNumKinds, K}});
  refs.push_back({"edge_vectors", &edge_vec, {kNumEdgeTypes, K}});
  for (int l = 0; l < L; ++l) {
    refs.push_back(
        {"layer_" + std::to_string(l) + "_w", &layer_w[l], {K, 2 * K}});
    refs.push_back({"layer_" + std::to_string(l) + "_b", &layer_b[l], {K}});
  }
  refs.push_back({"qe_head_w", &qe_head_w, {K}});
  refs.push_back({"qe_head_b", &qe_head_b, {1}});
  refs.push_back({"var_proj", &var_proj, {K, K}});
  refs.push_back({"term_proj", &term_proj, {K, K}});
  return refs;
}

size_t GnnParameters::parameter_count() const {
  size_t n = 0;
  for (const auto& t : const_cast<GnnParameters*>(this)->tensors()) {
    n += t.data->size();
  }
  return n;
}

GraphAdjacency GraphAdjacency::build(const ProofStateGraph& graph) {
  const int n = static_cast<int>(graph.num_nodes());
  GraphAdjacency adj;
  std::vector<int> counts(n, 0);
  for (const GraphEdge& e : graph.edges) ++counts[e.dst];
  adj.offsets.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) adj.offsets[i + 1] = adj.offsets[i] + counts[i];
  adj.src.resize(graph.edges.size());
  adj.type.resize(graph.edges.size());
  std::vector<int> fill(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const GraphEdge& e : graph.edges) {
    int slot = fill[e.dst]++;
    adj.src[slot] = e.src;
    adj.type[slot] = e.type;
  }
  return adj;
}

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// Softmax with the usual max-shift; logits stay as given.
std::vector<double> softmax(const std::vector<double>& z) {
  std::vector<double> p(z.size());
  double mx = *std::max_element(z.begin(), z.end());
  double sum = 0;
  for (size_t i = 0; i < z.size(); ++i) {
    p[i] = std::exp(z[i] - mx);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

void matvec(const double* w, const double* v, double* out, int rows,
            int cols) {
  for (int r = 0; r < rows; ++r) {
    const double* row = w + static_cast<size_t>(r) * cols;
    double acc = 0;
    for (int c = 0; c < cols; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
}

// out[c] += sum_r w[r*cols+c] * v[r]
void matvec_transposed_add(const double* w, const double* v, double* out,
                           int rows, int cols) {
  for (int r = 0; r < rows; ++r) {
    const double* row = w + static_cast<size_t>(r) * cols;
    double vr = v[r];
    if (vr == 0) continue;
    for (int c = 0; c < cols; ++c) out[c] += vr * row[c];
  }
}

}  // namespace

GnnOutputs gnn_forward(const GnnParameters& params,
                       const ProofStateGraph& graph, const GraphAdjacency& adj,
                       ForwardCache* cache) {
  const int K = params.K;
  const int L = params.L;
  const int n = static_cast<int>(graph.num_nodes());
  if (static_cast<int>(params.kind_emb.size()) != kNumKinds * K) {
    throw GnnIoError("kind embedding table does not match K");
  }

  std::vector<std::vector<double>> xs(L + 1);
  xs[0].resize(static_cast<size_t>(n) * K);
  for (int j = 0; j < n; ++j) {
    const double* e =
        params.kind_emb.data() +
        static_cast<size_t>(static_cast<int>(graph.node_kinds[j])) * K;
    std::copy(e, e + K, xs[0].data() + static_cast<size_t>(j) * K);
  }

  if (cache) {
    cache->concat.assign(L, {});
    cache->relu_on.assign(L, {});
    cache->argmax.assign(L, {});
  }

  std::vector<double> sum(K), mx(K), s(K), m(2 * K), pre(K);
  std::vector<int> am(K);
  for (int l = 0; l < L; ++l) {
    const double* xl = xs[l].data();
    xs[l + 1].resize(static_cast<size_t>(n) * K);
    double* xn = xs[l + 1].data();
    const double* W = params.layer_w[l].data();
    const double* b = params.layer_b[l].data();
    std::vector<double>* cc = nullptr;
    std::vector<uint8_t>* cr = nullptr;
    std::vector<int>* ca = nullptr;
    if (cache) {
      cache->concat[l].resize(static_cast<size_t>(n) * 2 * K);
      cache->relu_on[l].resize(static_cast<size_t>(n) * K);
      cache->argmax[l].resize(static_cast<size_t>(n) * K);
      cc = &cache->concat[l];
      cr = &cache->relu_on[l];
      ca = &cache->argmax[l];
    }
    for (int j = 0; j < n; ++j) {
      const int beg = adj.offsets[j];
      const int end = adj.offsets[j + 1];
      const int N = end - beg;
      if (N == 0) {
        std::fill(m.begin(), m.end(), 0.0);
        std::fill(am.begin(), am.end(), -1);
      } else {
        std::fill(sum.begin(), sum.end(), 0.0);
        for (int p = beg; p < end; ++p) {
          const double* xi = xl + static_cast<size_t>(adj.src[p]) * K;
          const double* ev =
              params.edge_vec.data() + static_cast<size_t>(adj.type[p]) * K;
          if (p == beg) {
            for (int c = 0; c < K; ++c) {
              s[c] = xi[c] + ev[c];
              sum[c] = s[c];
              mx[c] = s[c];
              am[c] = 0;
            }
          } else {
            for (int c = 0; c < K; ++c) {
              s[c] = xi[c] + ev[c];
              sum[c] += s[c];
              if (s[c] > mx[c]) {
                mx[c] = s[c];
                am[c] = p - beg;
              }
            }
          }
        }
        for (int c = 0; c < K; ++c) {
          m[c] = sum[c] / N;
          m[K + c] = mx[c];
        }
      }
      matvec(W, m.data(), pre.data(), K, 2 * K);
      const double* xj = xl + static_cast<size_t>(j) * K;
      double* xo = xn + static_cast<size_t>(j) * K;
      for (int c = 0; c < K; ++c) {
        double a = pre[c] + b[c];
        bool on = a > 0;
        xo[c] = (on ? a : 0.0) + xj[c];
        if (cr) (*cr)[static_cast<size_t>(j) * K + c] = on;
      }
      if (cc) {
        std::copy(m.begin(), m.end(), cc->data() + static_cast<size_t>(j) * 2 * K);
        std::copy(am.begin(), am.end(), ca->data() + static_cast<size_t>(j) * K);
      }
    }
  }

  const std::vector<double>& xL = xs[L];
  GnnOutputs out;
  out.qe_logits.reserve(graph.qe_nodes.size());
  for (int q : graph.qe_nodes) {
    double z = params.qe_head_b[0];
    const double* xq = xL.data() + static_cast<size_t>(q) * K;
    for (int c = 0; c < K; ++c) z += params.qe_head_w[c] * xq[c];
    out.qe_logits.push_back(z);
    out.qe_scores.push_back(sigmoid(z));
  }

  // Project every node once with the term map; variables are few, so their
  // projections are done per variable.
  std::vector<double> projected_terms(static_cast<size_t>(n) * K);
  for (int j = 0; j < n; ++j) {
    matvec(params.term_proj.data(), xL.data() + static_cast<size_t>(j) * K,
           projected_terms.data() + static_cast<size_t>(j) * K, K, K);
  }
  std::vector<double> u(K);
  out.term_logits.resize(graph.var_nodes.size());
  out.term_probs.resize(graph.var_nodes.size());
  for (size_t q = 0; q < graph.var_nodes.size(); ++q) {
    const auto& vars = graph.var_nodes[q];
    out.term_logits[q].resize(vars.size());
    out.term_probs[q].resize(vars.size());
    for (size_t v = 0; v < vars.size(); ++v) {
      matvec(params.var_proj.data(),
             xL.data() + static_cast<size_t>(vars[v]) * K, u.data(), K, K);
      const auto& cands = graph.candidates[q][v];
      std::vector<double>& logits = out.term_logits[q][v];
      logits.resize(cands.size());
      for (size_t t = 0; t < cands.size(); ++t) {
        const double* w =
            projected_terms.data() + static_cast<size_t>(cands[t]) * K;
        double acc = 0;
        for (int c = 0; c < K; ++c) acc += u[c] * w[c];
        logits[t] = acc;
      }
      if (!cands.empty()) {
        out.term_probs[q][v] = softmax(logits);
      }
    }
  }

  out.final_embeddings = xL;
  if (cache) cache->x = std::move(xs);
  return out;
}

namespace {

double bce_from_logit(double z, double y) {
  return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

double logsumexp(const std::vector<double>& z) {
  double mx = *std::max_element(z.begin(), z.end());
  double sum = 0;
  for (double v : z) sum += std::exp(v - mx);
  return mx + std::log(sum);
}

LossBreakdown compute_loss(const GnnOutputs& out, const Transition& t) {
  LossBreakdown loss;
  loss.n_qes = static_cast<int>(t.qe_labels.size());
  double bce = 0;
  for (size_t q = 0; q < t.qe_labels.size(); ++q) {
    bce += bce_from_logit(out.qe_logits[q], t.qe_labels[q] ? 1.0 : 0.0);
  }
  if (loss.n_qes > 0) loss.qe_bce = bce / loss.n_qes;

  double ce = 0;
  for (size_t q = 0; q < t.qe_labels.size(); ++q) {
    if (!t.qe_labels[q]) continue;
    for (size_t v = 0; v < t.term_labels[q].size(); ++v) {
      const std::vector<double>& z = out.term_logits[q][v];
      int label = t.term_labels[q][v];
      ce += logsumexp(z) - z[label];
      ++loss.n_labeled_vars;
    }
  }
  if (loss.n_labeled_vars > 0) loss.term_ce = ce / loss.n_labeled_vars;
  loss.total = loss.qe_bce + loss.term_ce;
  return loss;
}

}  // namespace

LossBreakdown gnn_loss(const GnnParameters& params, const Transition& t) {
  GnnOutputs out = gnn_forward(params, t.graph);
  return compute_loss(out, t);
}

LossBreakdown gnn_loss_and_grad(const GnnParameters& params,
                                const Transition& t, GnnParameters& grad) {
  const int K = params.K;
  const int L = params.L;
  const int n = static_cast<int>(t.graph.num_nodes());
  GraphAdjacency adj = GraphAdjacency::build(t.graph);
  ForwardCache cache;
  GnnOutputs out = gnn_forward(params, t.graph, adj, &cache);
  LossBreakdown loss = compute_loss(out, t);

  const std::vector<double>& xL = cache.x[L];
  std::vector<double> dx(static_cast<size_t>(n) * K, 0.0);

  // QE head.
  const int Q = loss.n_qes;
  for (size_t q = 0; q < t.qe_labels.size(); ++q) {
    double dz =
        (out.qe_scores[q] - (t.qe_labels[q] ? 1.0 : 0.0)) / std::max(Q, 1);
    int node = t.graph.qe_nodes[q];
    const double* xq = xL.data() + static_cast<size_t>(node) * K;
    double* dxq = dx.data() + static_cast<size_t>(node) * K;
    for (int c = 0; c < K; ++c) {
      grad.qe_head_w[c] += dz * xq[c];
      dxq[c] += dz * params.qe_head_w[c];
    }
    grad.qe_head_b[0] += dz;
  }

  // Term head, labeled variables only.
  const int V = loss.n_labeled_vars;
  std::vector<double> u(K), du(K), pu(K), xbar(K), w(K);
  for (size_t q = 0; q < t.qe_labels.size(); ++q) {
    if (!t.qe_labels[q]) continue;
    for (size_t v = 0; v < t.term_labels[q].size(); ++v) {
      const auto& cands = t.graph.candidates[q][v];
      const std::vector<double>& probs = out.term_probs[q][v];
      int label = t.term_labels[q][v];
      int var_node = t.graph.var_nodes[q][v];
      const double* xv = xL.data() + static_cast<size_t>(var_node) * K;
      matvec(params.var_proj.data(), xv, u.data(), K, K);
      // pu = term_proj^T u, shared by every candidate's input gradient.
      std::fill(pu.begin(), pu.end(), 0.0);
      matvec_transposed_add(params.term_proj.data(), u.data(), pu.data(), K,
                            K);
      std::fill(du.begin(), du.end(), 0.0);
      std::fill(xbar.begin(), xbar.end(), 0.0);
      for (size_t c_i = 0; c_i < cands.size(); ++c_i) {
        double dz = (probs[c_i] - (static_cast<int>(c_i) == label ? 1.0 : 0.0)) / V;
        const double* xt = xL.data() + static_cast<size_t>(cands[c_i]) * K;
        matvec(params.term_proj.data(), xt, w.data(), K, K);
        double* dxt = dx.data() + static_cast<size_t>(cands[c_i]) * K;
        for (int c = 0; c < K; ++c) {
          du[c] += dz * w[c];
          dxt[c] += dz * pu[c];
          xbar[c] += dz * xt[c];
        }
      }
      double* dxv = dx.data() + static_cast<size_t>(var_node) * K;
      for (int r = 0; r < K; ++r) {
        double* gv = grad.var_proj.data() + static_cast<size_t>(r) * K;
        double* gt = grad.term_proj.data() + static_cast<size_t>(r) * K;
        const double* pv = params.var_proj.data() + static_cast<size_t>(r) * K;
        for (int c = 0; c < K; ++c) {
          gv[c] += du[r] * xv[c];
          gt[c] += u[r] * xbar[c];
          dxv[c] += du[r] * pv[c];
        }
      }
    }
  }

  // Message-passing layers, last to first.
  std::vector<double> dpre(K), dm(2 * K);
  std::vector<double> dx_prev(static_cast<size_t>(n) * K);
  for (int l = L - 1; l >= 0; --l) {
    dx_prev = dx;  // residual path
    const double* W = params.layer_w[l].data();
    double* dW = grad.layer_w[l].data();
    double* db = grad.layer_b[l].data();
    const std::vector<double>& concat = cache.concat[l];
    const std::vector<uint8_t>& relu_on = cache.relu_on[l];
    const std::vector<int>& argmax = cache.argmax[l];
    for (int j = 0; j < n; ++j) {
      const double* dxj = dx.data() + static_cast<size_t>(j) * K;
      const uint8_t* on = relu_on.data() + static_cast<size_t>(j) * K;
      bool any = false;
      for (int c = 0; c < K; ++c) {
        dpre[c] = on[c] ? dxj[c] : 0.0;
        any = any || (dpre[c] != 0.0);
      }
      const int beg = adj.offsets[j];
      const int N = adj.offsets[j + 1] - beg;
      if (!any) continue;
      const double* m = concat.data() + static_cast<size_t>(j) * 2 * K;
      std::fill(dm.begin(), dm.end(), 0.0);
      for (int c = 0; c < K; ++c) {
        double g = dpre[c];
        if (g == 0.0) continue;
        db[c] += g;
        double* dWrow = dW + static_cast<size_t>(c) * 2 * K;
        const double* Wrow = W + static_cast<size_t>(c) * 2 * K;
        for (int d = 0; d < 2 * K; ++d) {
          dWrow[d] += g * m[d];
          dm[d] += g * Wrow[d];
        }
      }
      if (N == 0) continue;
      const int* am = argmax.data() + static_cast<size_t>(j) * K;
      const double* xl = cache.x[l].data();
      (void)xl;
      for (int p = beg; p < beg + N; ++p) {
        double* dxi = dx_prev.data() + static_cast<size_t>(adj.src[p]) * K;
        double* de =
            grad.edge_vec.data() + static_cast<size_t>(adj.type[p]) * K;
        const int pos = p - beg;
        for (int c = 0; c < K; ++c) {
          double ds = dm[c] / N;
          if (am[c] == pos) ds += dm[K + c];
          dxi[c] += ds;
          de[c] += ds;
        }
      }
    }
    std::swap(dx, dx_prev);
  }

  for (int j = 0; j < n; ++j) {
    double* gk = grad.kind_emb.data() +
                 static_cast<size_t>(static_cast<int>(t.graph.node_kinds[j])) * K;
    const double* dxj = dx.data() + static_cast<size_t>(j) * K;
    for (int c = 0; c < K; ++c) gk[c] += dxj[c];
  }
  return loss;
}

TrainLog gnn_train(GnnParameters& params,
                   const std::vector<Transition>& transitions,
                   const TrainOptions& options) {
  if (transitions.empty()) {
    throw GnnIoError("cannot train on an empty dataset");
  }
  // One bucket per training problem, in first-appearance order.
  std::vector<std::vector<size_t>> buckets;
  std::unordered_map<std::string, size_t> bucket_of;
  for (size_t i = 0; i < transitions.size(); ++i) {
    auto [it, inserted] =
        bucket_of.emplace(transitions[i].problem_name, buckets.size());
    if (inserted) buckets.emplace_back();
    buckets[it->second].push_back(i);
  }

  GnnParameters grad = GnnParameters::zeros_like(params);
  GnnParameters m1 = GnnParameters::zeros_like(params);
  GnnParameters m2 = GnnParameters::zeros_like(params);
  auto p_refs = params.tensors();
  auto g_refs = grad.tensors();
  auto m1_refs = m1.tensors();
  auto m2_refs = m2.tensors();

  std::mt19937_64 rng(options.seed);
  TrainLog log;
  for (int iter = 1; iter <= options.iterations; ++iter) {
    for (auto& ref : g_refs) std::fill(ref.data->begin(), ref.data->end(), 0.0);
    double batch_loss = 0;
    for (const auto& bucket : buckets) {
      size_t pick = bucket[rng() % bucket.size()];
      batch_loss += gnn_loss_and_grad(params, transitions[pick], grad).total;
    }
    const double inv_batch = 1.0 / static_cast<double>(buckets.size());
    batch_loss *= inv_batch;
    log.loss_per_iteration.push_back(batch_loss);

    const double bc1 = 1.0 - std::pow(options.beta1, iter);
    const double bc2 = 1.0 - std::pow(options.beta2, iter);
    for (size_t r = 0; r < p_refs.size(); ++r) {
      double* p = p_refs[r].data->data();
      double* g = g_refs[r].data->data();
      double* m = m1_refs[r].data->data();
      double* v = m2_refs[r].data->data();
      const size_t sz = p_refs[r].data->size();
      for (size_t i = 0; i < sz; ++i) {
        double gi = g[i] * inv_batch;
        m[i] = options.beta1 * m[i] + (1.0 - options.beta1) * gi;
        v[i] = options.beta2 * v[i] + (1.0 - options.beta2) * gi * gi;
        double mhat = m[i] / bc1;
        double vhat = v[i] / bc2;
        p[i] -= options.learning_rate * mhat / (std::sqrt(vhat) + options.epsilon);
      }
    }
  }
  return log;
}

GuidanceMetrics gnn_metrics(const GnnParameters& params,
                            const std::vector<Transition>& transitions) {
  GuidanceMetrics m;
  int top1_hits = 0;
  int tpr_hits = 0;
  int tnr_hits = 0;
  for (const Transition& t : transitions) {
    GnnOutputs out = gnn_forward(params, t.graph);
    for (size_t q = 0; q < t.qe_labels.size(); ++q) {
      if (t.qe_labels[q]) {
        ++m.n_useful_qes;
        if (out.qe_scores[q] > 0.5) ++tpr_hits;
        for (size_t v = 0; v < t.term_labels[q].size(); ++v) {
          ++m.n_labeled_vars;
          const std::vector<double>& probs = out.term_probs[q][v];
          int best = static_cast<int>(std::max_element(probs.begin(),
                                                       probs.end()) -
                                      probs.begin());
          if (best == t.term_labels[q][v]) ++top1_hits;
        }
      } else {
        ++m.n_other_qes;
        if (out.qe_scores[q] < 0.5) ++tnr_hits;
      }
    }
  }
  if (m.n_labeled_vars) {
    m.term_top1_accuracy = static_cast<double>(top1_hits) / m.n_labeled_vars;
  }
  if (m.n_useful_qes) m.qe_tpr = static_cast<double>(tpr_hits) / m.n_useful_qes;
  if (m.n_other_qes) m.qe_tnr = static_cast<double>(tnr_hits) / m.n_other_qes;
  return m;
}

void save_params(const GnnParameters& params, const std::string& path) {
  auto refs = const_cast<GnnParameters&>(params).tensors();
  json manifest{{"format_version", 1},
                {"K", params.K},
                {"L", params.L},
                {"kind_vocabulary", kind_vocabulary()},
                {"edge_type_count", kNumEdgeTypes}};
  json tensor_index = json::array();
  for (const auto& ref : refs) {
    tensor_index.push_back({{"name", ref.name}, {"shape", ref.shape}});
  }
  manifest["tensors"] = tensor_index;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw GnnIoError("cannot open for writing: " + path);
  out << manifest.dump() << "\n";
  std::vector<char> buf;
  for (const auto& ref : refs) {
    buf.resize(ref.data->size() * 4);
    for (size_t i = 0; i < ref.data->size(); ++i) {
      float f = static_cast<float>((*ref.data)[i]);
      std::memcpy(buf.data() + i * 4, &f, 4);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw GnnIoError("write failed: " + path);
}

GnnParameters load_params(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GnnIoError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw GnnIoError("empty weight file");

  int K, L;
  std::vector<json> tensor_index;
  try {
    json manifest = json::parse(line);
    if (manifest.at("format_version").get<int>() != 1) {
      throw GnnIoError("unsupported weight format version");
    }
    if (manifest.at("kind_vocabulary").get<std::vector<std::string>>() !=
        kind_vocabulary()) {
      throw GnnIoError("weight file kind vocabulary does not match");
    }
    if (manifest.at("edge_type_count").get<int>() != kNumEdgeTypes) {
      throw GnnIoError("weight file edge type count does not match");
    }
    K = manifest.at("K").get<int>();
    L = manifest.at("L").get<int>();
    for (const auto& t : manifest.at("tensors")) tensor_index.push_back(t);
  } catch (const json::exception& e) {
    throw GnnIoError(std::string("bad weight manifest: ") + e.what());
  }
  if (K <= 0 || L <= 0) throw GnnIoError("bad dimensions in weight manifest");

  GnnConfig config{K, L};
  GnnParameters params = GnnParameters::init(config, 0);
  auto refs = params.tensors();
  if (refs.size() != tensor_index.size()) {
    throw GnnIoError("tensor index does not match expected layout");
  }
  std::vector<char> buf;
  for (size_t r = 0; r < refs.size(); ++r) {
    if (tensor_index[r].at("name").get<std::string>() != refs[r].name ||
        tensor_index[r].at("shape").get<std::vector<int>>() != refs[r].shape) {
      throw GnnIoError("tensor shape mismatch for " + refs[r].name);
    }
    buf.resize(refs[r].data->size() * 4);
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
      throw GnnIoError("truncated weight file at tensor " + refs[r].name);
    }
    for (size_t i = 0; i < refs[r].data->size(); ++i) {
      float f;
      std::memcpy(&f, buf.data() + i * 4, 4);
      (*refs[r].data)[i] = f;
    }
  }
  char extra;
  if (in.read(&extra, 1); in.gcount() != 0) {
    throw GnnIoError("trailing data in weight file");
  }
  return params;
}

}  // namespace instgnn
