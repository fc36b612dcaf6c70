#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "translid/encoding.hpp"
#include "translid/rng.hpp"

namespace translid {

struct Hyperparams {
  std::uint32_t vocab_size = kDefaultHashVocab;  // ids 1..vocab_size
  std::uint32_t embed_dim = 8;
  std::uint32_t hidden_size = 32;
  double dropout_rate = 0.2;  // on the final hidden state, training only
  double l2_lambda = 1e-4;    // weight matrices only
  std::uint64_t seed = 0;     // parameter initialization

  void validate() const;
  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

enum class Gate : std::size_t { kInput = 0, kForget = 1, kCell = 2, kOutput = 3 };
inline constexpr std::size_t kGates = 4;

// All trainable state in one contiguous buffer.  Gate matrices are stored
// side by side: the input weights form a D x 4H row-major matrix whose
// columns [g*H, (g+1)*H) belong to gate g; likewise H x 4H recurrent weights
// and a 4H bias.  The embedding table has vocab_size + 1 rows; row 0 is the
// padding row and stays zero.
//
// The same type holds gradients and Adam moments.
class ParamTensor {
 public:
  ParamTensor() = default;
  ParamTensor(std::uint32_t vocab_size, std::uint32_t embed_dim, std::uint32_t hidden_size);

  static std::size_t count(std::uint32_t vocab_size, std::uint32_t embed_dim,
                           std::uint32_t hidden_size);

  std::uint32_t vocab_size() const { return vocab_; }
  std::uint32_t embed_dim() const { return embed_; }
  std::uint32_t hidden_size() const { return hidden_; }
  bool same_shape(const ParamTensor& other) const {
    return vocab_ == other.vocab_ && embed_ == other.embed_ && hidden_ == other.hidden_;
  }

  std::span<double> data() { return values_; }
  std::span<const double> data() const { return values_; }
  std::size_t size() const { return values_.size(); }

  std::span<double> embedding() { return block(0, embedding_size()); }
  std::span<const double> embedding() const { return block(0, embedding_size()); }
  std::span<double> embedding_row(std::uint32_t id) { return block(id * embed_, embed_); }
  std::span<const double> embedding_row(std::uint32_t id) const { return block(id * embed_, embed_); }

  std::span<double> input_weights() { return block(input_offset(), embed_ * 4 * hidden_); }
  std::span<const double> input_weights() const { return block(input_offset(), embed_ * 4 * hidden_); }
  std::span<double> recurrent_weights() { return block(recurrent_offset(), hidden_ * 4 * hidden_); }
  std::span<const double> recurrent_weights() const {
    return block(recurrent_offset(), hidden_ * 4 * hidden_);
  }
  std::span<double> gate_bias() { return block(bias_offset(), 4 * hidden_); }
  std::span<const double> gate_bias() const { return block(bias_offset(), 4 * hidden_); }
  std::span<double> gate_bias(Gate g) { return gate_bias().subspan(gate_index(g) * hidden_, hidden_); }
  std::span<double> output_weights() { return block(output_offset(), hidden_); }
  std::span<const double> output_weights() const { return block(output_offset(), hidden_); }
  double& output_bias() { return values_[output_offset() + hidden_]; }
  double output_bias() const { return values_[output_offset() + hidden_]; }

  // Element (row, column) of gate g's input / recurrent matrix.
  double& input_weight(Gate g, std::size_t row, std::size_t col) {
    return values_[input_offset() + row * 4 * hidden_ + gate_index(g) * hidden_ + col];
  }
  double& recurrent_weight(Gate g, std::size_t row, std::size_t col) {
    return values_[recurrent_offset() + row * 4 * hidden_ + gate_index(g) * hidden_ + col];
  }

  // True for entries covered by the L2 penalty (input, recurrent and output
  // weight matrices; not biases, not the embedding).
  bool is_regularized(std::size_t index) const {
    return (index >= input_offset() && index < bias_offset()) ||
           (index >= output_offset() && index < output_offset() + hidden_);
  }

  void fill(double v);
  friend bool operator==(const ParamTensor&, const ParamTensor&) = default;

 private:
  static std::size_t gate_index(Gate g) { return static_cast<std::size_t>(g); }
  std::size_t embedding_size() const { return (std::size_t{vocab_} + 1) * embed_; }
  std::size_t input_offset() const { return embedding_size(); }
  std::size_t recurrent_offset() const { return input_offset() + std::size_t{embed_} * 4 * hidden_; }
  std::size_t bias_offset() const { return recurrent_offset() + std::size_t{hidden_} * 4 * hidden_; }
  std::size_t output_offset() const { return bias_offset() + 4 * std::size_t{hidden_}; }

  std::span<double> block(std::size_t offset, std::size_t n) { return {values_.data() + offset, n}; }
  std::span<const double> block(std::size_t offset, std::size_t n) const {
    return {values_.data() + offset, n};
  }

  std::uint32_t vocab_ = 0;
  std::uint32_t embed_ = 0;
  std::uint32_t hidden_ = 0;
  std::vector<double> values_;
};

using ModelParams = ParamTensor;
using Gradients = ParamTensor;

// Glorot-uniform weights, zero biases except forget gate = 1, zero padding row.
ModelParams init_params(const Hyperparams& hyper);

// Everything backward() needs.  Per-timestep vectors are laid out
// [t * width + k].
struct ForwardCache {
  std::vector<std::uint32_t> ids;
  std::vector<double> gates;   // T x 4H activations (i, f, g, o)
  std::vector<double> cells;   // T x H, c_t
  std::vector<double> cell_tanh;  // T x H, tanh(c_t)
  std::vector<double> hidden;  // T x H, h_t
  std::vector<double> dropout_mask;  // H, already scaled by 1/(1-p)
  double logit = 0.0;
  double score = 0.5;
  std::uint32_t embed_dim = 0;
  std::uint32_t hidden_size = 0;

  std::size_t steps() const { return ids.size(); }
};

double logistic(double x);

// Inference pass (no dropout).
ForwardCache forward(const ModelParams& params, const EncodedSequence& seq);
// Training pass with inverted dropout at `dropout_rate` drawn from `rng`.
ForwardCache forward(const ModelParams& params, const EncodedSequence& seq, double dropout_rate,
                     Rng& rng);
// Pass with an explicit, pre-scaled dropout mask of size H.
ForwardCache forward_with_mask(const ModelParams& params, std::span<const std::uint32_t> ids,
                               std::span<const double> mask);

inline constexpr double kScoreClamp = 1e-12;

// Binary cross-entropy on the clamped score plus l2_lambda times the sum of
// squared weight-matrix entries.
double loss(double score, int label, const ModelParams& params, double l2_lambda);
double cross_entropy(double score, int label);
double l2_penalty(const ModelParams& params);

// Exact gradient of the cross-entropy term, added into `grads` times `scale`.
void accumulate_gradients(const ModelParams& params, const ForwardCache& cache, int label,
                          Gradients& grads, double scale = 1.0);
Gradients backward(const ModelParams& params, const ForwardCache& cache, int label);

struct Prediction {
  double score = 0.5;
  int label = 0;  // 1 iff score > 0.5
};

Prediction predict(const ModelParams& params, const EncodedSequence& seq);

}  // namespace translid
