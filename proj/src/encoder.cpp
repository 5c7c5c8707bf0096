#include "graphqa/encoder.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace graphqa {

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

EncodedSequence ToyEncoder::encode(const std::vector<std::string>& tokens) const {
  if (tokens.empty()) throw std::invalid_argument("encode: empty token sequence");
  const int n = static_cast<int>(tokens.size());

  Eigen::MatrixXd raw(n, d);
  for (int t = 0; t < n; ++t) {
    std::uint64_t state = fnv1a(tokens[static_cast<std::size_t>(t)]) ^ seed;
    for (int j = 0; j < d; ++j) {
      // Uniform in [-1, 1) from the top 53 bits.
      const double u = static_cast<double>(splitmix64(state) >> 11) / 9007199254740992.0;
      raw(t, j) = 2.0 * u - 1.0;
    }
  }

  constexpr double decay = 0.5;
  Eigen::MatrixXd forward(n, d), backward(n, d);
  forward.row(0) = raw.row(0);
  for (int t = 1; t < n; ++t) {
    forward.row(t) = decay * forward.row(t - 1) + (1.0 - decay) * raw.row(t);
  }
  backward.row(n - 1) = raw.row(n - 1);
  for (int t = n - 2; t >= 0; --t) {
    backward.row(t) = decay * backward.row(t + 1) + (1.0 - decay) * raw.row(t);
  }

  EncodedSequence out;
  out.token_vectors = 0.5 * (forward + backward);
  out.cls_vector = out.token_vectors.colwise().mean();
  return out;
}

std::string format_encoder_request(const std::string& instance_id,
                                   const std::vector<std::string>& tokens) {
  std::string request = instance_id;
  request.push_back('\t');
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) request.push_back(' ');
    request += tokens[i];
  }
  request.push_back('\n');
  return request;
}

namespace {

void append_u32(std::string& out, std::uint32_t value) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

std::uint32_t read_u32(const std::string& data, std::size_t offset) {
  std::uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    value |= static_cast<std::uint32_t>(static_cast<unsigned char>(data[offset + static_cast<std::size_t>(i)]))
             << (8 * i);
  }
  return value;
}

}  // namespace

std::string format_encoder_response(const Eigen::MatrixXd& token_vectors) {
  std::string out;
  const std::uint32_t n = static_cast<std::uint32_t>(token_vectors.rows());
  const std::uint32_t d = static_cast<std::uint32_t>(token_vectors.cols());
  out.reserve(8 + static_cast<std::size_t>(n) * d * 4);
  append_u32(out, n);
  append_u32(out, d);
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t c = 0; c < d; ++c) {
      const float value = static_cast<float>(token_vectors(r, c));
      std::uint32_t bits;
      std::memcpy(&bits, &value, 4);
      append_u32(out, bits);
    }
  }
  return out;
}

EncodedSequence encode_external(const std::string& instance_id,
                                const std::vector<std::string>& tokens,
                                const EncoderChannel& channel) {
  if (tokens.empty()) throw std::invalid_argument("encode_external: empty token sequence");
  const std::string response = channel(format_encoder_request(instance_id, tokens));
  if (response.size() < 8) {
    throw std::runtime_error("external encoder: response shorter than its header");
  }
  const std::uint32_t n = read_u32(response, 0);
  const std::uint32_t d = read_u32(response, 4);
  if (n != tokens.size()) {
    throw std::runtime_error("external encoder: row count " + std::to_string(n) +
                             " does not match token count " + std::to_string(tokens.size()));
  }
  const std::size_t expected = 8 + static_cast<std::size_t>(n) * d * 4;
  if (response.size() != expected) {
    throw std::runtime_error("external encoder: payload size " + std::to_string(response.size()) +
                             " != expected " + std::to_string(expected));
  }

  EncodedSequence out;
  out.token_vectors.resize(n, d);
  std::size_t offset = 8;
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t c = 0; c < d; ++c, offset += 4) {
      const std::uint32_t bits = read_u32(response, offset);
      float value;
      std::memcpy(&value, &bits, 4);
      if (!std::isfinite(value)) {
        throw std::runtime_error("external encoder: non-finite value at row " + std::to_string(r) +
                                 " col " + std::to_string(c));
      }
      out.token_vectors(r, c) = static_cast<double>(value);
    }
  }
  out.cls_vector = n > 0 ? Eigen::VectorXd(out.token_vectors.colwise().mean())
                         : Eigen::VectorXd::Zero(d);
  return out;
}

EncoderChannel file_exchange_channel(const std::string& dir, const std::string& name) {
  return [dir, name](const std::string& request) {
    const std::string req_path = dir + "/" + name + ".req";
    const std::string resp_path = dir + "/" + name + ".resp";
    {
      std::ofstream req(req_path, std::ios::binary);
      if (!req) throw std::runtime_error("cannot write encoder request: " + req_path);
      req << request;
    }
    std::ifstream resp(resp_path, std::ios::binary);
    if (!resp) {
      throw std::runtime_error("encoder response not found: " + resp_path);
    }
    std::string data((std::istreambuf_iterator<char>(resp)), std::istreambuf_iterator<char>());
    return data;
  };
}

int NodeStates::active_count() const {
  int count = 0;
  for (std::uint8_t a : active) count += a ? 1 : 0;
  return count;
}

Eigen::MatrixXd pool_spans(const EncodedSequence& enc, const std::vector<TokenSpan>& spans,
                           std::vector<std::uint8_t>* active_out) {
  const int n = static_cast<int>(spans.size());
  Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(n, enc.d());
  if (active_out) active_out->assign(static_cast<std::size_t>(n), 0);

  for (int i = 0; i < n; ++i) {
    const TokenSpan span = spans[static_cast<std::size_t>(i)];
    if (!span.valid()) continue;  // truncated away: zero row, inactive
    if (span.start < 0 || span.end > enc.length()) {
      throw std::out_of_range("node span [" + std::to_string(span.start) + "," +
                              std::to_string(span.end) + ") exceeds sequence length " +
                              std::to_string(enc.length()));
    }
    pooled.row(i) =
        enc.token_vectors.middleRows(span.start, span.length()).colwise().mean();
    if (active_out) (*active_out)[static_cast<std::size_t>(i)] = 1;
  }
  return pooled;
}

NodeStates init_node_states(const std::vector<TokenSpan>& spans, const EncodedSequence& enc,
                            const Eigen::MatrixXd& reduce_weight) {
  if (reduce_weight.rows() != enc.d()) {
    throw std::invalid_argument("reduce weight rows must equal encoder width");
  }
  NodeStates out;
  const Eigen::MatrixXd pooled = pool_spans(enc, spans, &out.active);
  out.states = (pooled * reduce_weight).array().tanh();
  for (int i = 0; i < out.node_count(); ++i) {
    if (!out.active[static_cast<std::size_t>(i)]) out.states.row(i).setZero();
  }
  out.layer = 0;
  return out;
}

}  // namespace graphqa
