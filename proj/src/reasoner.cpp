#include "graphqa/reasoner.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace graphqa {
namespace {

// Same splitmix64 chain the toy encoder uses; keeps init reproducible
// without depending on libstdc++'s distribution internals.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform_init(std::uint64_t& state) {
  const double unit = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;  // [0,1)
  return unit * 0.1 - 0.05;
}

void fill_uniform(Eigen::MatrixXd& m, std::uint64_t& state) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = uniform_init(state);
}

}  // namespace

Eigen::VectorXd softmax_scores(const std::array<double, 5>& scores) {
  double max_score = scores[0];
  for (double s : scores) max_score = std::max(max_score, s);
  Eigen::VectorXd exps(5);
  for (int i = 0; i < 5; ++i) exps[i] = std::exp(scores[i] - max_score);
  return exps / exps.sum();
}

ReasonerParams init_params(int d, int k, int layer_count, int mlp_hidden, std::uint64_t seed) {
  if (d <= 0 || k <= 0 || layer_count <= 0 || mlp_hidden <= 0)
    throw std::invalid_argument("reasoner dimensions must be positive");
  ReasonerParams p;
  p.d = d;
  p.k = k;
  p.layer_count = layer_count;
  p.mlp_hidden = mlp_hidden;
  p.reduce.resize(d, k);
  p.gcn.resize(static_cast<std::size_t>(layer_count));
  for (auto& layer : p.gcn) {
    layer.neighbor.resize(k, k);
    layer.self.resize(k, k);
  }
  p.attention.resize(d, k);
  p.mlp_hidden_w.resize(mlp_hidden, d + k);
  p.mlp_hidden_b.resize(mlp_hidden, 1);
  p.mlp_out_w.resize(mlp_hidden, 1);
  p.mlp_out_b.resize(1, 1);

  std::uint64_t state = seed;
  for_each_tensor(p, [&state](const std::string&, Eigen::MatrixXd& t) { fill_uniform(t, state); });
  return p;
}

ReasonerParams zeros_like(const ReasonerParams& params) {
  ReasonerParams z = params;
  for_each_tensor(z, [](const std::string&, Eigen::MatrixXd& t) { t.setZero(); });
  return z;
}

NodeStates gcn_layer(const NodeStates& states, const std::vector<std::vector<int>>& neighbors,
                     const Eigen::MatrixXd& neighbor_weight, const Eigen::MatrixXd& self_weight) {
  const int n = states.node_count();
  if (static_cast<int>(neighbors.size()) != n)
    throw std::invalid_argument("adjacency size does not match node count");

  NodeStates next = states;
  next.layer = states.layer + 1;
  next.states.setZero();

  // Row-major state convention: row i holds h_i^T, so V h_j becomes
  // row_j(H V^T).
  const Eigen::MatrixXd transformed = states.states * neighbor_weight.transpose();
  const Eigen::MatrixXd self_part = states.states * self_weight.transpose();
  for (int i = 0; i < n; ++i) {
    if (!states.active[static_cast<std::size_t>(i)]) continue;
    Eigen::RowVectorXd z = Eigen::RowVectorXd::Zero(states.k());
    int live = 0;
    for (int j : neighbors[static_cast<std::size_t>(i)]) {
      if (j < 0 || j >= n) throw std::out_of_range("adjacency references unknown node");
      if (!states.active[static_cast<std::size_t>(j)]) continue;
      z += transformed.row(j);
      ++live;
    }
    if (live > 0) z /= static_cast<double>(live);
    next.states.row(i) = (self_part.row(i) + z).array().tanh();
  }
  return next;
}

AttentionResult graph_attention(const NodeStates& final_states, const Eigen::VectorXd& cls,
                                const Eigen::MatrixXd& attention_weight) {
  const int n = final_states.node_count();
  if (final_states.active_count() == 0)
    throw std::invalid_argument("graph attention requires at least one active node");

  AttentionResult out;
  out.alpha = Eigen::VectorXd::Zero(n);
  // u_i = cls . tanh(W1 h_i); lifted states come out as rows of H W1^T.
  const Eigen::MatrixXd lifted = (final_states.states * attention_weight.transpose()).array().tanh();
  Eigen::VectorXd u = lifted * cls;

  double denom = 0.0;
  for (int i = 0; i < n; ++i)
    if (final_states.active[static_cast<std::size_t>(i)]) denom += u[i];

  if (std::abs(denom) < 1e-8) {
    const double uniform = 1.0 / static_cast<double>(final_states.active_count());
    for (int i = 0; i < n; ++i)
      if (final_states.active[static_cast<std::size_t>(i)]) out.alpha[i] = uniform;
  } else {
    for (int i = 0; i < n; ++i)
      if (final_states.active[static_cast<std::size_t>(i)]) out.alpha[i] = u[i] / denom;
  }
  out.graph_vector = final_states.states.transpose() * out.alpha;
  return out;
}

double score_choice(const Eigen::VectorXd& cls, const Eigen::VectorXd& graph_vector,
                    const ReasonerParams& params) {
  Eigen::VectorXd joint(params.d + params.k);
  joint << cls, graph_vector;
  const Eigen::VectorXd hidden =
      (params.mlp_hidden_w * joint + params.mlp_hidden_b.col(0)).array().tanh();
  return params.mlp_out_w.col(0).dot(hidden) + params.mlp_out_b(0, 0);
}

void ChoiceArtifacts::finalize() {
  if (static_cast<int>(spans.size()) != static_cast<int>(neighbors.size()))
    throw std::invalid_argument("span and adjacency node counts disagree");
  pooled = pool_spans(enc, spans, &active);
}

namespace {

// Full forward trace for one choice, kept around for the backward pass.
struct ChoiceTrace {
  std::vector<Eigen::MatrixXd> h;  // layer_count + 1 state matrices, n x k
  Eigen::MatrixXd lifted;          // tanh(H_L W1^T), n x d
  Eigen::VectorXd u;               // n
  Eigen::VectorXd alpha;           // n
  double denom = 0.0;
  bool uniform_fallback = false;
  Eigen::VectorXd graph_vector;    // k
  Eigen::VectorXd joint;           // d + k
  Eigen::VectorXd hidden;          // mlp_hidden
  double score = 0.0;
  bool has_graph = false;
};

ChoiceTrace trace_choice(const ChoiceArtifacts& art, const ReasonerParams& params) {
  if (art.pooled.rows() != art.node_count())
    throw std::logic_error("ChoiceArtifacts::finalize() was not called");

  ChoiceTrace trace;
  const int n = art.node_count();

  NodeStates states;
  states.active = art.active;
  states.layer = 0;
  states.states = (art.pooled * params.reduce).array().tanh();
  for (int i = 0; i < n; ++i)
    if (!art.active[static_cast<std::size_t>(i)]) states.states.row(i).setZero();

  trace.has_graph = states.active_count() > 0;
  trace.h.push_back(states.states);
  for (const auto& layer : params.gcn) {
    states = gcn_layer(states, art.neighbors, layer.neighbor, layer.self);
    trace.h.push_back(states.states);
  }

  if (trace.has_graph) {
    trace.lifted = (states.states * params.attention.transpose()).array().tanh();
    trace.u = trace.lifted * art.enc.cls_vector;
    trace.denom = 0.0;
    for (int i = 0; i < n; ++i)
      if (art.active[static_cast<std::size_t>(i)]) trace.denom += trace.u[i];
    trace.alpha = Eigen::VectorXd::Zero(n);
    trace.uniform_fallback = std::abs(trace.denom) < 1e-8;
    if (trace.uniform_fallback) {
      const double uniform = 1.0 / static_cast<double>(states.active_count());
      for (int i = 0; i < n; ++i)
        if (art.active[static_cast<std::size_t>(i)]) trace.alpha[i] = uniform;
    } else {
      for (int i = 0; i < n; ++i)
        if (art.active[static_cast<std::size_t>(i)]) trace.alpha[i] = trace.u[i] / trace.denom;
    }
    trace.graph_vector = states.states.transpose() * trace.alpha;
  } else {
    trace.alpha = Eigen::VectorXd::Zero(n);
    trace.graph_vector = Eigen::VectorXd::Zero(params.k);
  }

  trace.joint.resize(params.d + params.k);
  trace.joint << art.enc.cls_vector, trace.graph_vector;
  trace.hidden = (params.mlp_hidden_w * trace.joint + params.mlp_hidden_b.col(0)).array().tanh();
  trace.score = params.mlp_out_w.col(0).dot(trace.hidden) + params.mlp_out_b(0, 0);
  return trace;
}

// Backpropagates d(loss)/d(score) for one choice into `grads`.
void backward_choice(const ChoiceArtifacts& art, const ChoiceTrace& trace,
                     const ReasonerParams& params, double dscore, ReasonerParams& grads) {
  const int n = art.node_count();

  // MLP head.
  grads.mlp_out_w.col(0) += dscore * trace.hidden;
  grads.mlp_out_b(0, 0) += dscore;
  const Eigen::VectorXd dhidden_pre =
      (dscore * params.mlp_out_w.col(0).array() * (1.0 - trace.hidden.array().square())).matrix();
  grads.mlp_hidden_w += dhidden_pre * trace.joint.transpose();
  grads.mlp_hidden_b.col(0) += dhidden_pre;
  const Eigen::VectorXd djoint = params.mlp_hidden_w.transpose() * dhidden_pre;
  // djoint.head(d) is the cls gradient; the encoder is frozen so it stops here.
  if (!trace.has_graph) return;
  const Eigen::VectorXd dgraph = djoint.tail(params.k);

  const Eigen::MatrixXd& h_final = trace.h.back();
  Eigen::MatrixXd dh = Eigen::MatrixXd::Zero(n, params.k);

  // graph_vector = sum_i alpha_i h_i.
  Eigen::VectorXd dalpha = h_final * dgraph;
  for (int i = 0; i < n; ++i) {
    if (!art.active[static_cast<std::size_t>(i)]) continue;
    dh.row(i) += trace.alpha[i] * dgraph.transpose();
  }

  if (!trace.uniform_fallback) {
    // alpha_j = u_j / sum(u): dalpha/du is (delta_ij - alpha_i) / denom.
    double weighted = 0.0;
    for (int i = 0; i < n; ++i)
      if (art.active[static_cast<std::size_t>(i)]) weighted += dalpha[i] * trace.alpha[i];
    for (int j = 0; j < n; ++j) {
      if (!art.active[static_cast<std::size_t>(j)]) continue;
      const double du = (dalpha[j] - weighted) / trace.denom;
      // u_j = cls . tanh(W1 h_j)
      const Eigen::VectorXd dlift_pre =
          (du * art.enc.cls_vector.array() * (1.0 - trace.lifted.row(j).transpose().array().square()))
              .matrix();
      grads.attention += dlift_pre * h_final.row(j);
      dh.row(j) += dlift_pre.transpose() * params.attention;
    }
  }
  // Uniform fallback is a constant w.r.t. parameters: no attention grads.

  // GCN layers, last to first.
  Eigen::MatrixXd dnext = dh;
  for (int l = params.layer_count - 1; l >= 0; --l) {
    const Eigen::MatrixXd& h_in = trace.h[static_cast<std::size_t>(l)];
    const Eigen::MatrixXd& h_out = trace.h[static_cast<std::size_t>(l) + 1];
    const auto& layer = params.gcn[static_cast<std::size_t>(l)];
    auto& layer_grads = grads.gcn[static_cast<std::size_t>(l)];

    Eigen::MatrixXd da = Eigen::MatrixXd::Zero(n, params.k);
    for (int i = 0; i < n; ++i) {
      if (!art.active[static_cast<std::size_t>(i)]) continue;
      da.row(i) =
          (dnext.row(i).array() * (1.0 - h_out.row(i).array().square())).matrix();
    }

    Eigen::MatrixXd dprev = Eigen::MatrixXd::Zero(n, params.k);
    // Self term W^l h_i.
    layer_grads.self += da.transpose() * h_in;
    dprev += da * layer.self;
    // Neighbor term: z_i = mean_{j in N_i} V h_j over active neighbors.
    for (int i = 0; i < n; ++i) {
      if (!art.active[static_cast<std::size_t>(i)]) continue;
      std::vector<int> live;
      for (int j : art.neighbors[static_cast<std::size_t>(i)])
        if (art.active[static_cast<std::size_t>(j)]) live.push_back(j);
      if (live.empty()) continue;
      const double inv = 1.0 / static_cast<double>(live.size());
      for (int j : live) {
        layer_grads.neighbor += inv * da.row(i).transpose() * h_in.row(j);
        dprev.row(j) += inv * da.row(i) * layer.neighbor;
      }
    }
    dnext = std::move(dprev);
  }

  // h^0 = tanh(reduce^T pooled_i).
  const Eigen::MatrixXd& h0 = trace.h.front();
  Eigen::MatrixXd da0 = Eigen::MatrixXd::Zero(n, params.k);
  for (int i = 0; i < n; ++i) {
    if (!art.active[static_cast<std::size_t>(i)]) continue;
    da0.row(i) = (dnext.row(i).array() * (1.0 - h0.row(i).array().square())).matrix();
  }
  grads.reduce += art.pooled.transpose() * da0;
}

}  // namespace

ChoiceScore forward_choice(const ChoiceArtifacts& artifacts, const ReasonerParams& params) {
  const ChoiceTrace trace = trace_choice(artifacts, params);
  ChoiceScore out;
  out.score = trace.score;
  out.attention = trace.alpha;
  out.graph_vector = trace.graph_vector;
  return out;
}

std::array<ChoiceScore, 5> predict(const ReasonerInstance& instance, const ReasonerParams& params) {
  std::array<ChoiceScore, 5> out;
  std::array<double, 5> raw{};
  for (int c = 0; c < 5; ++c) {
    out[static_cast<std::size_t>(c)] = forward_choice(instance.choices[static_cast<std::size_t>(c)], params);
    raw[static_cast<std::size_t>(c)] = out[static_cast<std::size_t>(c)].score;
  }
  const Eigen::VectorXd probs = softmax_scores(raw);
  for (int c = 0; c < 5; ++c) out[static_cast<std::size_t>(c)].probability = probs[c];
  return out;
}

int argmax_choice(const std::array<ChoiceScore, 5>& scores) {
  int best = 0;
  for (int c = 1; c < 5; ++c)
    if (scores[static_cast<std::size_t>(c)].probability >
        scores[static_cast<std::size_t>(best)].probability)
      best = c;
  return best;
}

double batch_loss(const std::vector<ReasonerInstance>& batch, const ReasonerParams& params) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  double total = 0.0;
  for (const auto& instance : batch) {
    if (instance.gold < 0 || instance.gold > 4)
      throw std::invalid_argument("instance has no gold label");
    std::array<double, 5> raw{};
    for (int c = 0; c < 5; ++c)
      raw[static_cast<std::size_t>(c)] =
          trace_choice(instance.choices[static_cast<std::size_t>(c)], params).score;
    double max_score = raw[0];
    for (double s : raw) max_score = std::max(max_score, s);
    double denom = 0.0;
    for (double s : raw) denom += std::exp(s - max_score);
    total += -(raw[static_cast<std::size_t>(instance.gold)] - max_score - std::log(denom));
  }
  return total / static_cast<double>(batch.size());
}

double loss_and_grads(const std::vector<ReasonerInstance>& batch, const ReasonerParams& params,
                      ReasonerParams& grads) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  grads = zeros_like(params);

  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  for (const auto& instance : batch) {
    if (instance.gold < 0 || instance.gold > 4)
      throw std::invalid_argument("instance has no gold label");
    std::array<ChoiceTrace, 5> traces;
    std::array<double, 5> raw{};
    for (int c = 0; c < 5; ++c) {
      traces[static_cast<std::size_t>(c)] =
          trace_choice(instance.choices[static_cast<std::size_t>(c)], params);
      raw[static_cast<std::size_t>(c)] = traces[static_cast<std::size_t>(c)].score;
    }
    const Eigen::VectorXd probs = softmax_scores(raw);
    total += -std::log(probs[instance.gold]);

    // d(-log p_gold)/d score_c = p_c - [c == gold], averaged over the batch.
    for (int c = 0; c < 5; ++c) {
      const double dscore = (probs[c] - (c == instance.gold ? 1.0 : 0.0)) * inv_batch;
      backward_choice(instance.choices[static_cast<std::size_t>(c)],
                      traces[static_cast<std::size_t>(c)], params, dscore, grads);
    }
  }
  return total * inv_batch;
}

AdamState init_adam(const ReasonerParams& params, double learning_rate) {
  AdamState state;
  state.m = zeros_like(params);
  state.v = zeros_like(params);
  state.learning_rate = learning_rate;
  return state;
}

void adam_step(ReasonerParams& params, const ReasonerParams& grads, AdamState& state) {
  bool finite = true;
  for_each_tensor(grads, [&finite](const std::string&, const Eigen::MatrixXd& t) {
    if (!t.allFinite()) finite = false;
  });
  if (!finite) throw std::runtime_error("non-finite gradient; refusing to update parameters");

  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(state.beta1, t);
  const double correction2 = 1.0 - std::pow(state.beta2, t);

  std::vector<Eigen::MatrixXd*> param_tensors, m_tensors, v_tensors;
  std::vector<const Eigen::MatrixXd*> grad_tensors;
  for_each_tensor(params, [&](const std::string&, Eigen::MatrixXd& x) { param_tensors.push_back(&x); });
  for_each_tensor(grads,
                  [&](const std::string&, const Eigen::MatrixXd& x) { grad_tensors.push_back(&x); });
  for_each_tensor(state.m, [&](const std::string&, Eigen::MatrixXd& x) { m_tensors.push_back(&x); });
  for_each_tensor(state.v, [&](const std::string&, Eigen::MatrixXd& x) { v_tensors.push_back(&x); });
  if (param_tensors.size() != grad_tensors.size())
    throw std::invalid_argument("gradient tensor count mismatch");

  for (std::size_t i = 0; i < param_tensors.size(); ++i) {
    Eigen::MatrixXd& p = *param_tensors[i];
    const Eigen::MatrixXd& g = *grad_tensors[i];
    Eigen::MatrixXd& m = *m_tensors[i];
    Eigen::MatrixXd& v = *v_tensors[i];
    if (g.rows() != p.rows() || g.cols() != p.cols())
      throw std::invalid_argument("gradient shape mismatch");
    m = state.beta1 * m + (1.0 - state.beta1) * g;
    v = state.beta2 * v + (1.0 - state.beta2) * g.cwiseProduct(g);
    const Eigen::MatrixXd m_hat = m / correction1;
    const Eigen::MatrixXd v_hat = v / correction2;
    p -= state.learning_rate *
         (m_hat.array() / (v_hat.array().sqrt() + state.epsilon)).matrix();
  }
}

// ---- checkpoint serialization ------------------------------------------

namespace {

constexpr char kMagic[8] = {'G', 'Q', 'C', 'K', 'P', 'T', '0', '1'};

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xffu);
  out.write(reinterpret_cast<const char*>(buf), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xffu);
  out.write(reinterpret_cast<const char*>(buf), 8);
}

void write_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  write_u64(out, bits);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char buf[4];
  in.read(reinterpret_cast<char*>(buf), 4);
  if (!in) throw std::runtime_error("checkpoint truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
  return v;
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if (!in) throw std::runtime_error("checkpoint truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

double read_f64(std::istream& in) {
  const std::uint64_t bits = read_u64(in);
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

void write_tensor_set(std::ostream& out, const ReasonerParams& params) {
  std::vector<std::pair<std::string, const Eigen::MatrixXd*>> tensors;
  for_each_tensor(params, [&](const std::string& name, const Eigen::MatrixXd& t) {
    tensors.emplace_back(name, &t);
  });
  write_u32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& [name, tensor] : tensors) {
    write_u32(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_u32(out, static_cast<std::uint32_t>(tensor->rows()));
    write_u32(out, static_cast<std::uint32_t>(tensor->cols()));
  }
  for (const auto& [name, tensor] : tensors) {
    (void)name;
    for (Eigen::Index r = 0; r < tensor->rows(); ++r)
      for (Eigen::Index c = 0; c < tensor->cols(); ++c) write_f64(out, (*tensor)(r, c));
  }
}

void read_tensor_set(std::istream& in, ReasonerParams& params) {
  std::vector<std::pair<std::string, Eigen::MatrixXd*>> tensors;
  for_each_tensor(params,
                  [&](const std::string& name, Eigen::MatrixXd& t) { tensors.emplace_back(name, &t); });
  const std::uint32_t count = read_u32(in);
  if (count != tensors.size()) throw std::runtime_error("checkpoint tensor count mismatch");
  for (auto& [expected_name, tensor] : tensors) {
    const std::uint32_t name_len = read_u32(in);
    std::string name(name_len, '\0');
    in.read(name.data(), static_cast<std::streamsize>(name_len));
    if (!in || name != expected_name)
      throw std::runtime_error("checkpoint tensor table mismatch at '" + expected_name + "'");
    const std::uint32_t rows = read_u32(in);
    const std::uint32_t cols = read_u32(in);
    if (static_cast<Eigen::Index>(rows) != tensor->rows() ||
        static_cast<Eigen::Index>(cols) != tensor->cols())
      throw std::runtime_error("checkpoint shape mismatch for '" + expected_name + "'");
  }
  for (auto& [name, tensor] : tensors) {
    (void)name;
    for (Eigen::Index r = 0; r < tensor->rows(); ++r)
      for (Eigen::Index c = 0; c < tensor->cols(); ++c) (*tensor)(r, c) = read_f64(in);
  }
}

}  // namespace

void save_checkpoint(const std::string& path, const ReasonerParams& params,
                     const AdamState* optimizer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out.write(kMagic, sizeof(kMagic));
  write_u32(out, static_cast<std::uint32_t>(params.d));
  write_u32(out, static_cast<std::uint32_t>(params.k));
  write_u32(out, static_cast<std::uint32_t>(params.layer_count));
  write_u32(out, static_cast<std::uint32_t>(params.mlp_hidden));
  out.put(optimizer ? 1 : 0);
  if (optimizer) {
    write_u64(out, static_cast<std::uint64_t>(optimizer->step));
    write_f64(out, optimizer->learning_rate);
    write_f64(out, optimizer->beta1);
    write_f64(out, optimizer->beta2);
    write_f64(out, optimizer->epsilon);
  }
  write_tensor_set(out, params);
  if (optimizer) {
    write_tensor_set(out, optimizer->m);
    write_tensor_set(out, optimizer->v);
  }
  if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a reasoner checkpoint: " + path);

  const int d = static_cast<int>(read_u32(in));
  const int k = static_cast<int>(read_u32(in));
  const int layers = static_cast<int>(read_u32(in));
  const int hidden = static_cast<int>(read_u32(in));

  Checkpoint ckpt;
  ckpt.params = init_params(d, k, layers, hidden, 0);
  const int flag = in.get();
  if (flag != 0 && flag != 1) throw std::runtime_error("corrupt checkpoint header");
  ckpt.has_optimizer = flag == 1;
  if (ckpt.has_optimizer) {
    ckpt.optimizer.step = static_cast<std::int64_t>(read_u64(in));
    ckpt.optimizer.learning_rate = read_f64(in);
    ckpt.optimizer.beta1 = read_f64(in);
    ckpt.optimizer.beta2 = read_f64(in);
    ckpt.optimizer.epsilon = read_f64(in);
  }
  read_tensor_set(in, ckpt.params);
  if (ckpt.has_optimizer) {
    ckpt.optimizer.m = zeros_like(ckpt.params);
    ckpt.optimizer.v = zeros_like(ckpt.params);
    read_tensor_set(in, ckpt.optimizer.m);
    read_tensor_set(in, ckpt.optimizer.v);
  }
  return ckpt;
}

}  // namespace graphqa
