#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "translid/classifier.hpp"
#include "translid/corpus.hpp"

namespace translid {

// Parallel score/label lists, one entry per test word.
struct ScoredSet {
  std::vector<double> scores;
  std::vector<int> labels;

  std::size_t size() const { return scores.size(); }
  void push(double score, int label) {
    scores.push_back(score);
    labels.push_back(label);
  }
};

// Fraction of entries with (score > threshold) == (label == 1).
double accuracy(const ScoredSet& scored, double threshold = 0.5);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

struct RocCurve {
  double auc = 0.0;
  std::vector<RocPoint> points;  // (0,0) ... (1,1), both coordinates non-decreasing
};

// Exact ROC: one point per distinct score (positive iff score >= threshold)
// plus the sentinel (0,0).  AUC by the trapezoid rule, evaluated on integer
// counts so ties contribute exactly one half.
RocCurve roc_auc(const ScoredSet& scored);

struct EvalReport {
  TokenizerMode mode = TokenizerMode::kPhonetic;
  double accuracy = 0.0;
  double auc = 0.0;
  std::vector<RocPoint> roc;
  std::map<Label, double> per_language_accuracy;
  std::map<Label, std::size_t> counts;
  std::map<Label, std::string> language_names;
  std::size_t total = 0;
};

ScoredSet score_corpus(const Classifier& classifier, const Corpus& corpus);

// Throws Error(kModeMismatch) if `requested` differs from the model's mode.
EvalReport evaluate(const Classifier& classifier, const Corpus& test, TokenizerMode requested);

// `fpr<TAB>tpr` lines.
void write_roc(const std::vector<RocPoint>& points, const std::filesystem::path& path);

}  // namespace translid
