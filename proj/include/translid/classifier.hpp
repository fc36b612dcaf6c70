#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "translid/corpus.hpp"
#include "translid/md5.hpp"
#include "translid/model.hpp"

namespace translid {

// A trained model plus everything needed to reproduce its input pipeline.
struct TrainedModel {
  Hyperparams hyper;
  TokenizerMode mode = TokenizerMode::kPhonetic;
  Md5Digest pattern_checksum{};  // all zero in chars mode
  std::map<Label, std::string> language_names;
  ModelParams params;

  std::string language_name(Label label) const;
  friend bool operator==(const TrainedModel&, const TrainedModel&) = default;
};

inline constexpr std::uint32_t kModelFormatVersion = 1;

// Binary layout, all integers and doubles little-endian:
//   "TLIDMODL" | u32 version | u8 mode | u32 V | u32 D | u32 H
//   | f64 dropout | f64 l2 | u64 seed | 16-byte pattern checksum
//   | u32 len + name (label 1) | u32 len + name (label 0)
//   | u64 count | count x f64 parameters | 16-byte MD5 of all preceding bytes
std::string serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(std::string_view bytes);
void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

// Scores normalized words with a trained model.  Holds references to the
// model and pattern set, which must outlive it.
class Classifier {
 public:
  // Throws Error(kModeMismatch) if the model is phonetic and the pattern set
  // is missing or differs from the one it was trained with.
  Classifier(const TrainedModel& model, const PatternSet* patterns);

  EncodedSequence encode(std::string_view word) const { return encoder_.encode(word); }
  double score(std::string_view word) const;
  Prediction predict(std::string_view word) const;
  const TrainedModel& model() const { return *model_; }
  TokenizerMode mode() const { return model_->mode; }

 private:
  const TrainedModel* model_;
  Encoder encoder_;
};

// Throws Error(kModeMismatch) when `requested` differs from the model's mode.
void require_mode(const TrainedModel& model, TokenizerMode requested);

}  // namespace translid
