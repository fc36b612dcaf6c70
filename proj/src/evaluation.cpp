#include "translid/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "translid/error.hpp"
#include "translid/format.hpp"

namespace translid {
namespace {

void check(const ScoredSet& scored) {
  if (scored.scores.empty()) throw Error(ErrorCode::kData, "empty scored set");
  if (scored.scores.size() != scored.labels.size())
    throw Error(ErrorCode::kInvalidArgument, "scores and labels differ in length");
}

}  // namespace

double accuracy(const ScoredSet& scored, double threshold) {
  check(scored);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < scored.size(); ++i)
    if ((scored.scores[i] > threshold) == (scored.labels[i] == 1)) ++correct;
  return static_cast<double>(correct) / static_cast<double>(scored.size());
}

RocCurve roc_auc(const ScoredSet& scored) {
  check(scored);
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return scored.scores[a] > scored.scores[b]; });

  std::uint64_t pos = 0, neg = 0;
  for (int label : scored.labels) (label == 1 ? pos : neg) += 1;
  if (pos == 0 || neg == 0) throw Error(ErrorCode::kData, "ROC needs both labels present");

  RocCurve roc;
  roc.points.push_back({0.0, 0.0});
  std::uint64_t tp = 0, fp = 0, area2 = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scored.scores[order[i]];
    const std::uint64_t tp0 = tp, fp0 = fp;
    for (; i < order.size() && scored.scores[order[i]] == s; ++i)
      (scored.labels[order[i]] == 1 ? tp : fp) += 1;
    area2 += (fp - fp0) * (tp + tp0);
    roc.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                          static_cast<double>(tp) / static_cast<double>(pos)});
  }
  roc.auc = static_cast<double>(area2) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
  return roc;
}

ScoredSet score_corpus(const Classifier& classifier, const Corpus& corpus) {
  ScoredSet scored;
  scored.scores.reserve(corpus.size());
  scored.labels.reserve(corpus.size());
  for (const auto& w : corpus.words) scored.push(classifier.score(w.text), w.label);
  return scored;
}

EvalReport evaluate(const Classifier& classifier, const Corpus& test, TokenizerMode requested) {
  require_mode(classifier.model(), requested);
  if (test.empty()) throw Error(ErrorCode::kData, "empty test set");
  if (!test.has_both_labels())
    throw Error(ErrorCode::kData, "test set must contain both labels for ROC/AUC");
  const auto scored = score_corpus(classifier, test);

  EvalReport report;
  report.mode = classifier.mode();
  report.total = scored.size();
  report.accuracy = accuracy(scored);
  report.language_names = classifier.model().language_names;
  for (const auto& [label, name] : test.language_names)
    if (!report.language_names.contains(label)) report.language_names[label] = name;

  std::map<Label, std::size_t> correct;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const auto label = static_cast<Label>(scored.labels[i]);
    ++report.counts[label];
    if ((scored.scores[i] > 0.5) == (label == 1)) ++correct[label];
  }
  for (const auto& [label, n] : report.counts)
    report.per_language_accuracy[label] = static_cast<double>(correct[label]) / static_cast<double>(n);

  auto roc = roc_auc(scored);
  report.auc = roc.auc;
  report.roc = std::move(roc.points);
  return report;
}

void write_roc(const std::vector<RocPoint>& points, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto& p : points) out << format_double(p.fpr) << '\t' << format_double(p.tpr) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace translid
