#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "graphqa/encoder.hpp"

namespace graphqa {

struct GcnLayerParams {
  Eigen::MatrixXd neighbor;  // V^l, k x k, applied to aggregated neighbor states
  Eigen::MatrixXd self;      // W^l, k x k, applied to the node's own state
};

/// All trainable tensors. The encoder is frozen; only these train.
/// `reduce` (d x k) maps pooled token vectors to node states, `attention`
/// (d x k) lifts final node states for the cls dot product, and the MLP
/// scores the concatenation [cls (d); graph vector (k)].
struct ReasonerParams {
  int d = 128;
  int k = 64;
  int layer_count = 1;
  int mlp_hidden = 64;

  Eigen::MatrixXd reduce;        // d x k
  std::vector<GcnLayerParams> gcn;
  Eigen::MatrixXd attention;     // d x k
  Eigen::MatrixXd mlp_hidden_w;  // hidden x (d + k)
  Eigen::MatrixXd mlp_hidden_b;  // hidden x 1
  Eigen::MatrixXd mlp_out_w;     // hidden x 1
  Eigen::MatrixXd mlp_out_b;     // 1 x 1
};

/// Seeded uniform(-0.05, 0.05) initialization, reproducible across runs.
ReasonerParams init_params(int d, int k, int layer_count, int mlp_hidden, std::uint64_t seed);

/// Same shapes as `params`, all zeros. Doubles as the gradient container.
ReasonerParams zeros_like(const ReasonerParams& params);

/// Visits every tensor in canonical checkpoint order.
template <typename Params, typename Fn>
void for_each_tensor(Params& params, Fn&& fn) {
  fn("reduce", params.reduce);
  for (std::size_t l = 0; l < params.gcn.size(); ++l) {
    const std::string prefix = "gcn." + std::to_string(l);
    fn(prefix + ".neighbor", params.gcn[l].neighbor);
    fn(prefix + ".self", params.gcn[l].self);
  }
  fn("attention", params.attention);
  fn("mlp.hidden_w", params.mlp_hidden_w);
  fn("mlp.hidden_b", params.mlp_hidden_b);
  fn("mlp.out_w", params.mlp_out_w);
  fn("mlp.out_b", params.mlp_out_b);
}

/// One GCN aggregate+combine step over the undirected union graph:
/// z_i = mean over active neighbors of (V h_j), zero when isolated, then
/// h'_i = tanh(W^l h_i + z_i). Inactive nodes stay zero.
NodeStates gcn_layer(const NodeStates& states, const std::vector<std::vector<int>>& neighbors,
                     const Eigen::MatrixXd& neighbor_weight, const Eigen::MatrixXd& self_weight);

/// Multiplicative graph attention: u_i = cls . tanh(W1 h_i), alpha = u
/// normalized by its sum (uniform over active nodes when |sum| < 1e-8),
/// graph vector = sum alpha_i h_i. Throws when no node is active.
struct AttentionResult {
  Eigen::VectorXd alpha;         // per node, zero for inactive
  Eigen::VectorXd graph_vector;  // k
};
AttentionResult graph_attention(const NodeStates& final_states, const Eigen::VectorXd& cls,
                                const Eigen::MatrixXd& attention_weight);

/// MLP score over [cls; graph_vector]; hidden activation tanh, linear out.
double score_choice(const Eigen::VectorXd& cls, const Eigen::VectorXd& graph_vector,
                    const ReasonerParams& params);

/// Everything the reasoner needs for one answer choice. `pooled` and
/// `active` are derived from enc+spans once via finalize().
struct ChoiceArtifacts {
  EncodedSequence enc;
  std::vector<TokenSpan> spans;              // per union-graph node
  std::vector<std::vector<int>> neighbors;   // undirected union adjacency

  Eigen::MatrixXd pooled;                    // node count x d
  std::vector<std::uint8_t> active;

  void finalize();
  int node_count() const { return static_cast<int>(spans.size()); }
};

struct ReasonerInstance {
  std::array<ChoiceArtifacts, 5> choices;
  int gold = -1;  // 0..4, or -1 when unlabeled
};

struct ChoiceScore {
  double score = 0.0;
  double probability = 0.0;
  Eigen::VectorXd attention;     // alpha per node, empty when no graph
  Eigen::VectorXd graph_vector;  // k
};

/// Scores one choice; empty or fully-truncated graphs fall back to
/// scoring [cls; 0].
ChoiceScore forward_choice(const ChoiceArtifacts& artifacts, const ReasonerParams& params);

/// Max-shifted softmax over the five raw scores.
Eigen::VectorXd softmax_scores(const std::array<double, 5>& scores);

/// Softmax over the five scores; predicted answer is the argmax, ties
/// resolved to the lowest choice index.
std::array<ChoiceScore, 5> predict(const ReasonerInstance& instance,
                                   const ReasonerParams& params);
int argmax_choice(const std::array<ChoiceScore, 5>& scores);

/// Mean cross-entropy of the gold choice plus analytic gradients for
/// every parameter. Throws on unlabeled instances.
double loss_and_grads(const std::vector<ReasonerInstance>& batch, const ReasonerParams& params,
                      ReasonerParams& grads);

/// Forward-only companion used by the finite-difference oracle.
double batch_loss(const std::vector<ReasonerInstance>& batch, const ReasonerParams& params);

struct AdamState {
  ReasonerParams m;  // first moments
  ReasonerParams v;  // second moments
  std::int64_t step = 0;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

AdamState init_adam(const ReasonerParams& params, double learning_rate);

/// Bias-corrected Adam update in place. A non-finite gradient aborts the
/// step with an exception before any parameter changes.
void adam_step(ReasonerParams& params, const ReasonerParams& grads, AdamState& state);

/// Versioned binary checkpoint: magic, dims, shape table, little-endian
/// f64 payload. Round-trips bit-exactly. Optimizer state is optional.
void save_checkpoint(const std::string& path, const ReasonerParams& params,
                     const AdamState* optimizer = nullptr);
struct Checkpoint {
  ReasonerParams params;
  bool has_optimizer = false;
  AdamState optimizer;
};
Checkpoint load_checkpoint(const std::string& path);

}  // namespace graphqa
