#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "graphqa/linearize.hpp"

namespace graphqa {

/// Token-level contextual vectors plus the sequence summary (cls) vector.
struct EncodedSequence {
  Eigen::MatrixXd token_vectors;  // rows = tokens, cols = d
  Eigen::VectorXd cls_vector;     // length d
  int d() const { return static_cast<int>(token_vectors.cols()); }
  int length() const { return static_cast<int>(token_vectors.rows()); }
};

/// Deterministic stand-in for a pretrained contextual encoder. Each token
/// gets a seeded hash embedding; forward and backward exponential
/// smoothing passes (decay 0.5) are averaged so token order matters. The
/// cls vector is the mean of the smoothed token vectors.
struct ToyEncoder {
  int d = 128;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;

  EncodedSequence encode(const std::vector<std::string>& tokens) const;
};

/// Transport for an external encoder: takes the serialized request,
/// returns the binary response.
using EncoderChannel = std::function<std::string(const std::string& request)>;

/// Request: one record, `instance_id<TAB>space-joined tokens\n`.
std::string format_encoder_request(const std::string& instance_id,
                                   const std::vector<std::string>& tokens);

/// Response: u32 n, u32 d, then n*d little-endian f32 values, row-major.
std::string format_encoder_response(const Eigen::MatrixXd& token_vectors);

/// Round-trips tokens through the channel and validates the reply: the
/// row count must equal the token count and every value must be finite.
EncodedSequence encode_external(const std::string& instance_id,
                                const std::vector<std::string>& tokens,
                                const EncoderChannel& channel);

/// A channel that exchanges request/response files under `dir`: the
/// request is written to `<dir>/<name>.req` and the reply is read from
/// `<dir>/<name>.resp`, which an external encoder must have produced.
EncoderChannel file_exchange_channel(const std::string& dir, const std::string& name);

/// Reduced node states h^0 and the active mask. Nodes whose evidence was
/// truncated away stay zero and inactive.
struct NodeStates {
  Eigen::MatrixXd states;  // rows = nodes, cols = k
  std::vector<std::uint8_t> active;
  int layer = 0;
  int k() const { return static_cast<int>(states.cols()); }
  int node_count() const { return static_cast<int>(states.rows()); }
  int active_count() const;
};

/// Mean token vector per span; invalid spans give a zero row and an
/// inactive flag. Throws when a span exceeds the sequence bounds.
Eigen::MatrixXd pool_spans(const EncodedSequence& enc, const std::vector<TokenSpan>& spans,
                           std::vector<std::uint8_t>* active_out = nullptr);

/// h^0_i = tanh(W^T pooled_i) with W of shape d x k.
NodeStates init_node_states(const std::vector<TokenSpan>& spans, const EncodedSequence& enc,
                            const Eigen::MatrixXd& reduce_weight);

}  // namespace graphqa
