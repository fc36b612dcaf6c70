#include "translid/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "translid/error.hpp"

namespace translid {

void Hyperparams::validate() const {
  if (vocab_size < 1 || embed_dim < 1 || hidden_size < 1)
    throw Error(ErrorCode::kInvalidArgument, "vocab_size, embed_dim and hidden_size must be >= 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "dropout_rate must lie in [0, 1)");
  if (!(l2_lambda >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "l2_lambda must be >= 0");
}

ParamTensor::ParamTensor(std::uint32_t vocab_size, std::uint32_t embed_dim,
                         std::uint32_t hidden_size)
    : vocab_(vocab_size),
      embed_(embed_dim),
      hidden_(hidden_size),
      values_(count(vocab_size, embed_dim, hidden_size), 0.0) {}

std::size_t ParamTensor::count(std::uint32_t vocab_size, std::uint32_t embed_dim,
                               std::uint32_t hidden_size) {
  const std::size_t v = vocab_size, d = embed_dim, h = hidden_size;
  return (v + 1) * d + d * 4 * h + h * 4 * h + 4 * h + h + 1;
}

void ParamTensor::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

ModelParams init_params(const Hyperparams& hyper) {
  hyper.validate();
  ModelParams p(hyper.vocab_size, hyper.embed_dim, hyper.hidden_size);
  Rng rng(hyper.seed);
  auto glorot = [&](std::span<double> block, double fan_in, double fan_out) {
    const double s = std::sqrt(6.0 / (fan_in + fan_out));
    for (auto& x : block) x = rng.uniform(-s, s);
  };
  const double v = hyper.vocab_size, d = hyper.embed_dim, h = hyper.hidden_size;
  glorot(p.embedding().subspan(hyper.embed_dim), v, d);
  glorot(p.input_weights(), d, h);
  glorot(p.recurrent_weights(), h, h);
  glorot(p.output_weights(), h, 1.0);
  for (auto& b : p.gate_bias(Gate::kForget)) b = 1.0;
  return p;
}

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

ForwardCache forward_with_mask(const ModelParams& params, std::span<const std::uint32_t> ids,
                               std::span<const double> mask) {
  const std::size_t D = params.embed_dim(), H = params.hidden_size(), G = 4 * H;
  if (ids.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot score an empty sequence");
  if (mask.size() != H) throw Error(ErrorCode::kInvalidArgument, "dropout mask size != hidden size");
  for (auto id : ids)
    if (id < 1 || id > params.vocab_size())
      throw Error(ErrorCode::kInvalidArgument,
                  "token id " + std::to_string(id) + " outside [1, " +
                      std::to_string(params.vocab_size()) + "]");

  const std::size_t T = ids.size();
  ForwardCache cache;
  cache.ids.assign(ids.begin(), ids.end());
  cache.embed_dim = params.embed_dim();
  cache.hidden_size = params.hidden_size();
  cache.gates.resize(T * G);
  cache.cells.resize(T * H);
  cache.cell_tanh.resize(T * H);
  cache.hidden.resize(T * H);
  cache.dropout_mask.assign(mask.begin(), mask.end());

  const auto W = params.input_weights();
  const auto U = params.recurrent_weights();
  const auto b = params.gate_bias();
  std::vector<double> z(G);
  std::vector<double> zeros(H, 0.0);

  for (std::size_t t = 0; t < T; ++t) {
    const auto x = params.embedding_row(ids[t]);
    const double* h_prev = t == 0 ? zeros.data() : &cache.hidden[(t - 1) * H];
    const double* c_prev = t == 0 ? zeros.data() : &cache.cells[(t - 1) * H];

    std::copy(b.begin(), b.end(), z.begin());
    for (std::size_t r = 0; r < D; ++r) {
      const double xr = x[r];
      const double* row = &W[r * G];
      for (std::size_t k = 0; k < G; ++k) z[k] += xr * row[k];
    }
    for (std::size_t r = 0; r < H; ++r) {
      const double hr = h_prev[r];
      const double* row = &U[r * G];
      for (std::size_t k = 0; k < G; ++k) z[k] += hr * row[k];
    }

    double* a = &cache.gates[t * G];
    for (std::size_t k = 0; k < H; ++k) {
      a[k] = logistic(z[k]);                  // input
      a[H + k] = logistic(z[H + k]);          // forget
      a[2 * H + k] = std::tanh(z[2 * H + k]);  // candidate
      a[3 * H + k] = logistic(z[3 * H + k]);  // output
      const double c = a[H + k] * c_prev[k] + a[k] * a[2 * H + k];
      const double tc = std::tanh(c);
      cache.cells[t * H + k] = c;
      cache.cell_tanh[t * H + k] = tc;
      cache.hidden[t * H + k] = a[3 * H + k] * tc;
    }
  }

  const auto w_out = params.output_weights();
  const double* h_last = &cache.hidden[(T - 1) * H];
  double logit = params.output_bias();
  for (std::size_t k = 0; k < H; ++k) logit += w_out[k] * h_last[k] * mask[k];
  cache.logit = logit;
  cache.score = logistic(logit);
  return cache;
}

ForwardCache forward(const ModelParams& params, const EncodedSequence& seq) {
  const std::vector<double> ones(params.hidden_size(), 1.0);
  return forward_with_mask(params, seq.ids, ones);
}

ForwardCache forward(const ModelParams& params, const EncodedSequence& seq, double dropout_rate,
                     Rng& rng) {
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "dropout_rate must lie in [0, 1)");
  std::vector<double> mask(params.hidden_size(), 1.0);
  if (dropout_rate > 0.0) {
    const double keep_scale = 1.0 / (1.0 - dropout_rate);
    for (auto& m : mask) m = rng.uniform01() < dropout_rate ? 0.0 : keep_scale;
  }
  return forward_with_mask(params, seq.ids, mask);
}

double cross_entropy(double score, int label) {
  const double s = std::clamp(score, kScoreClamp, 1.0 - kScoreClamp);
  return label == 1 ? -std::log(s) : -std::log1p(-s);
}

double l2_penalty(const ModelParams& params) {
  double sum = 0.0;
  for (auto block : {params.input_weights(), params.recurrent_weights(), params.output_weights()})
    for (double w : block) sum += w * w;
  return sum;
}

double loss(double score, int label, const ModelParams& params, double l2_lambda) {
  if (!(score >= 0.0 && score <= 1.0))
    throw Error(ErrorCode::kNumeric, "score outside [0, 1]: " + std::to_string(score));
  double value = cross_entropy(score, label);
  if (l2_lambda > 0.0) value += l2_lambda * l2_penalty(params);
  return value;
}

void accumulate_gradients(const ModelParams& params, const ForwardCache& cache, int label,
                          Gradients& grads, double scale) {
  const std::size_t D = params.embed_dim(), H = params.hidden_size(), G = 4 * H;
  if (cache.embed_dim != D || cache.hidden_size != H || cache.steps() == 0 ||
      cache.hidden.size() != cache.steps() * H)
    throw Error(ErrorCode::kInvalidArgument, "forward cache does not match parameters");
  if (!grads.same_shape(params))
    throw Error(ErrorCode::kInvalidArgument, "gradient buffer does not match parameters");

  const std::size_t T = cache.steps();
  const auto W = params.input_weights();
  const auto U = params.recurrent_weights();
  const auto w_out = params.output_weights();
  auto dW = grads.input_weights();
  auto dU = grads.recurrent_weights();
  auto db = grads.gate_bias();
  auto dw_out = grads.output_weights();

  // d(loss)/d(logit) for sigmoid + cross-entropy.
  const double dlogit = scale * (cache.score - static_cast<double>(label));
  const double* h_last = &cache.hidden[(T - 1) * H];
  std::vector<double> dh(H), dc(H, 0.0), dz(G), dh_prev(H);
  for (std::size_t k = 0; k < H; ++k) {
    dw_out[k] += dlogit * h_last[k] * cache.dropout_mask[k];
    dh[k] = dlogit * w_out[k] * cache.dropout_mask[k];
  }
  grads.output_bias() += dlogit;

  for (std::size_t step = T; step-- > 0;) {
    const double* a = &cache.gates[step * G];
    const double* tc = &cache.cell_tanh[step * H];
    const double* c_prev = step == 0 ? nullptr : &cache.cells[(step - 1) * H];
    const double* h_prev = step == 0 ? nullptr : &cache.hidden[(step - 1) * H];

    for (std::size_t k = 0; k < H; ++k) {
      const double i = a[k], f = a[H + k], g = a[2 * H + k], o = a[3 * H + k];
      const double dct = dh[k] * o * (1.0 - tc[k] * tc[k]) + dc[k];
      dz[k] = dct * g * i * (1.0 - i);
      dz[H + k] = c_prev ? dct * c_prev[k] * f * (1.0 - f) : 0.0;
      dz[2 * H + k] = dct * i * (1.0 - g * g);
      dz[3 * H + k] = dh[k] * tc[k] * o * (1.0 - o);
      dc[k] = dct * f;
    }

    for (std::size_t k = 0; k < G; ++k) db[k] += dz[k];

    const auto x = params.embedding_row(cache.ids[step]);
    auto dx = grads.embedding_row(cache.ids[step]);
    for (std::size_t r = 0; r < D; ++r) {
      const double* wrow = &W[r * G];
      double* dwrow = &dW[r * G];
      double acc = 0.0;
      for (std::size_t k = 0; k < G; ++k) {
        dwrow[k] += x[r] * dz[k];
        acc += wrow[k] * dz[k];
      }
      dx[r] += acc;
    }

    for (std::size_t r = 0; r < H; ++r) {
      const double* urow = &U[r * G];
      double* durow = &dU[r * G];
      double acc = 0.0;
      for (std::size_t k = 0; k < G; ++k) acc += urow[k] * dz[k];
      if (h_prev)
        for (std::size_t k = 0; k < G; ++k) durow[k] += h_prev[r] * dz[k];
      dh_prev[r] = acc;
    }
    std::swap(dh, dh_prev);
  }
}

Gradients backward(const ModelParams& params, const ForwardCache& cache, int label) {
  Gradients grads(params.vocab_size(), params.embed_dim(), params.hidden_size());
  accumulate_gradients(params, cache, label, grads);
  return grads;
}

Prediction predict(const ModelParams& params, const EncodedSequence& seq) {
  const auto cache = forward(params, seq);
  return {cache.score, cache.score > 0.5 ? 1 : 0};
}

}  // namespace translid
