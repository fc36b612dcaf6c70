#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "translid/classifier.hpp"
#include "translid/corpus.hpp"
#include "translid/model.hpp"

namespace translid {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct OptimizerState {
  ParamTensor m;
  ParamTensor v;
  std::uint64_t step = 0;
  AdamConfig config;

  OptimizerState() = default;
  OptimizerState(const ModelParams& params, AdamConfig cfg)
      : m(params.vocab_size(), params.embed_dim(), params.hidden_size()),
        v(params.vocab_size(), params.embed_dim(), params.hidden_size()),
        config(cfg) {}
};

// One Adam update with bias correction.  The L2 term 2*l2_lambda*theta is
// added to the gradient of regularized entries before the moment updates.
void adam_step(ModelParams& params, const Gradients& grads, OptimizerState& state,
               double l2_lambda);

struct TrainConfig {
  std::uint32_t batch_size = 64;
  std::uint32_t max_epochs = 50;
  std::uint32_t patience = 3;
  AdamConfig adam;
  double grad_clip = 10.0;  // per-component clamp on the batch-mean gradient
  std::uint64_t seed = 0;   // shuffling and dropout masks

  void validate() const;
};

struct EpochRecord {
  std::uint32_t epoch = 0;  // 0 = before the first update
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::uint32_t best_epoch = 0;

  const EpochRecord& best() const { return epochs.at(best_epoch); }
  std::uint32_t epochs_run() const {
    return epochs.empty() ? 0 : static_cast<std::uint32_t>(epochs.size() - 1);
  }
  friend bool operator==(const TrainHistory&, const TrainHistory&) = default;
};

// `epoch<TAB>train_loss<TAB>val_loss<TAB>val_acc` with a header line.
void write_history(const TrainHistory& history, const std::filesystem::path& path);

// Patience-based stopping on validation loss.  A strict decrease counts as
// an improvement.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::uint32_t patience) : patience_(patience) {}

  // Records the loss for `epoch`; returns true if it is the new best.
  bool observe(std::uint32_t epoch, double val_loss);
  bool should_stop() const { return last_epoch_ >= best_epoch_ + patience_; }
  std::uint32_t best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_loss_; }

 private:
  std::uint32_t patience_;
  std::uint32_t best_epoch_ = 0;
  std::uint32_t last_epoch_ = 0;
  double best_loss_ = 0.0;
  bool seen_ = false;
};

struct TrainResult {
  TrainedModel model;  // parameters from the best validation epoch
  TrainHistory history;
};

// Mini-batch Adam training with dropout, L2 and early stopping.  `patterns`
// is required in phonetic mode.
TrainResult train(const Corpus& train_set, const Corpus& val_set, TokenizerMode mode,
                  const PatternSet* patterns, const Hyperparams& hyper, const TrainConfig& config);

}  // namespace translid
