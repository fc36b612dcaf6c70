#include "translid/training.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "translid/error.hpp"
#include "translid/format.hpp"

namespace translid {

void adam_step(ModelParams& params, const Gradients& grads, OptimizerState& state,
               double l2_lambda) {
  if (!params.same_shape(grads) || !params.same_shape(state.m) || !params.same_shape(state.v))
    throw Error(ErrorCode::kInvalidArgument, "adam_step: shape mismatch");
  const auto& cfg = state.config;
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(cfg.beta1, t);
  const double correction2 = 1.0 - std::pow(cfg.beta2, t);

  auto theta = params.data();
  const auto g_in = grads.data();
  auto m = state.m.data();
  auto v = state.v.data();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    double g = g_in[i];
    if (l2_lambda != 0.0 && params.is_regularized(i)) g += 2.0 * l2_lambda * theta[i];
    m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g;
    v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = m[i] / correction1;
    const double v_hat = v[i] / correction2;
    theta[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
}

void TrainConfig::validate() const {
  if (batch_size < 1) throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  if (patience < 1) throw Error(ErrorCode::kInvalidArgument, "patience must be >= 1");
  if (!(adam.learning_rate > 0.0) || !(adam.beta1 >= 0.0 && adam.beta1 < 1.0) ||
      !(adam.beta2 >= 0.0 && adam.beta2 < 1.0) || !(adam.epsilon > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "invalid Adam constants");
  if (!(grad_clip > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grad_clip must be > 0");
}

bool EarlyStopping::observe(std::uint32_t epoch, double val_loss) {
  last_epoch_ = epoch;
  if (!seen_ || val_loss < best_loss_) {
    seen_ = true;
    best_loss_ = val_loss;
    best_epoch_ = epoch;
    return true;
  }
  return false;
}

void write_history(const TrainHistory& history, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << "epoch\ttrain_loss\tval_loss\tval_acc\n";
  for (const auto& e : history.epochs)
    out << e.epoch << '\t' << format_double(e.train_loss) << '\t' << format_double(e.val_loss)
        << '\t' << format_double(e.val_accuracy) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

namespace {

struct Example {
  EncodedSequence seq;
  int label;
};

std::vector<Example> encode_all(const Corpus& corpus, const Encoder& encoder) {
  std::vector<Example> out;
  out.reserve(corpus.size());
  for (const auto& w : corpus.words) out.push_back({encoder.encode(w.text), w.label});
  return out;
}

struct Metrics {
  double loss;
  double accuracy;
};

Metrics measure(const ModelParams& params, const std::vector<Example>& data, double l2_lambda) {
  double total = 0.0;
  std::size_t correct = 0;
  for (const auto& ex : data) {
    const double s = forward(params, ex.seq).score;
    total += cross_entropy(s, ex.label);
    if ((s > 0.5 ? 1 : 0) == ex.label) ++correct;
  }
  const double n = static_cast<double>(data.size());
  double loss_value = total / n;
  if (l2_lambda > 0.0) loss_value += l2_lambda * l2_penalty(params);
  if (!std::isfinite(loss_value)) throw Error(ErrorCode::kNumeric, "non-finite loss");
  return {loss_value, static_cast<double>(correct) / n};
}

}  // namespace

TrainResult train(const Corpus& train_set, const Corpus& val_set, TokenizerMode mode,
                  const PatternSet* patterns, const Hyperparams& hyper_in,
                  const TrainConfig& config) {
  config.validate();
  Hyperparams hyper = hyper_in;
  if (mode == TokenizerMode::kChars) hyper.vocab_size = kAlphabetVocab;
  hyper.validate();
  if (train_set.empty() || val_set.empty())
    throw Error(ErrorCode::kData, "training and validation sets must be non-empty");
  if (!train_set.has_both_labels())
    throw Error(ErrorCode::kData, "training set must contain both labels");

  const Encoder encoder(Tokenizer::make(mode, patterns), hyper.vocab_size);
  const auto train_data = encode_all(train_set, encoder);
  const auto val_data = encode_all(val_set, encoder);

  TrainResult result;
  result.model.hyper = hyper;
  result.model.mode = mode;
  if (mode == TokenizerMode::kPhonetic) result.model.pattern_checksum = patterns->checksum();
  result.model.language_names = train_set.language_names;

  ModelParams params = init_params(hyper);
  OptimizerState optimizer(params, config.adam);
  Gradients grads(params.vocab_size(), params.embed_dim(), params.hidden_size());
  EarlyStopping stopper(config.patience);
  Rng rng(config.seed);

  auto record = [&](std::uint32_t epoch) {
    const auto tr = measure(params, train_data, hyper.l2_lambda);
    const auto va = measure(params, val_data, hyper.l2_lambda);
    result.history.epochs.push_back({epoch, tr.loss, va.loss, va.accuracy});
    if (stopper.observe(epoch, va.loss)) result.model.params = params;
  };
  record(0);

  std::vector<std::size_t> order(train_data.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::uint32_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(std::span(order));
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const double scale = 1.0 / static_cast<double>(end - start);
      grads.fill(0.0);
      for (std::size_t k = start; k < end; ++k) {
        const auto& ex = train_data[order[k]];
        const auto cache = forward(params, ex.seq, hyper.dropout_rate, rng);
        accumulate_gradients(params, cache, ex.label, grads, scale);
      }
      for (auto& g : grads.data()) {
        if (!std::isfinite(g)) throw Error(ErrorCode::kNumeric, "non-finite gradient");
        g = std::clamp(g, -config.grad_clip, config.grad_clip);
      }
      adam_step(params, grads, optimizer, hyper.l2_lambda);
    }
    record(epoch);
    if (stopper.should_stop()) break;
  }
  result.history.best_epoch = stopper.best_epoch();
  return result;
}

}  // namespace translid
