#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "translid/classifier.hpp"
#include "translid/corpus.hpp"
#include "translid/rng.hpp"

namespace translid {

inline constexpr std::string_view kDefaultVowels = "aeiou";
// Words whose unperturbed correct-class score is at or below this are
// excluded from the fractional-difference statistics.
inline constexpr double kMinBeforeScore = 1e-9;

struct PerturbationConfig {
  std::uint32_t N = 3;
  std::string vowels{kDefaultVowels};
  std::uint64_t seed = 0;
};

// Returns a count in [0, N] for one vowel occurrence.
using CountDraw = std::function<std::uint32_t(std::uint32_t N)>;

// Every vowel of the original word is replaced by `draw(N)` copies of
// itself, left to right; inserted copies are not rescanned.  The result is
// empty when every letter was a vowel that drew 0.
std::string perturb_word(std::string_view word, std::string_view vowels, std::uint32_t N,
                         const CountDraw& draw);
// Counts uniform over {0, ..., N} from `rng`.
std::string perturb_word(std::string_view word, const PerturbationConfig& config, Rng& rng);

// Score the model assigns to the word's true language.
inline double correct_class_score(double score, int true_label) {
  return true_label == 1 ? score : 1.0 - score;
}
double correct_class_score(const Classifier& classifier, std::string_view word, int true_label);

// (after - before) / before; nullopt when before <= kMinBeforeScore.
std::optional<double> fractional_difference(double before, double after);

double mean(std::span<const double> values);
double population_stddev(std::span<const double> values);
double median(std::span<const double> values);

// Population standard deviation of the fractional differences (>= 2 values).
double sigma_correctscore(std::span<const double> fractional_diffs);
// median / population std-dev of the unperturbed scores.
double cv_correctscore(std::span<const double> before_scores);

// Normalized Mann-Whitney statistic u = P(after > before) + P(tie)/2 over all
// pairs, folded to min(u, 1 - u).  Rank-based, O(n log n).
double min_u(std::span<const double> before, std::span<const double> after);
// Twice the pair count behind min_u's u, as an exact integer.
std::uint64_t mann_whitney_u2(std::span<const double> before, std::span<const double> after);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

enum class UPooling { kPooled, kPerLanguage };

struct RobustnessRow {
  std::uint32_t N = 0;
  double sigma = 0.0;
  double cv = 0.0;
  double ratio = 0.0;
  double min_u = 0.5;
  std::size_t excluded = 0;
  std::size_t scored = 0;

  friend bool operator==(const RobustnessRow&, const RobustnessRow&) = default;
};

struct RobustnessReport {
  std::vector<RobustnessRow> rows;
};

// Produces the perturbed form of test word `index` at level N.
using Perturber = std::function<std::string(std::string_view word, std::uint32_t N, std::size_t index)>;

// Each word gets its own stream seeded from (seed, N, index), so results do
// not depend on evaluation order.
Perturber seeded_perturber(std::uint64_t seed, std::string vowels = std::string(kDefaultVowels));

RobustnessRow measure_robustness(const Classifier& classifier, const Corpus& test, std::uint32_t N,
                                 const Perturber& perturber, UPooling pooling = UPooling::kPooled);

struct SweepOptions {
  std::vector<std::uint32_t> Ns{1, 2, 3, 4, 5};
  std::uint64_t seed = 0;
  std::string vowels{kDefaultVowels};
  UPooling pooling = UPooling::kPooled;
};

RobustnessReport sweep(const Classifier& classifier, const Corpus& test, const SweepOptions& options);

// Sorted unique values; `had_duplicates` reports whether any were dropped.
std::vector<std::uint32_t> dedupe_levels(std::vector<std::uint32_t> Ns, bool* had_duplicates);

// `N<TAB>sigma<TAB>cv<TAB>ratio<TAB>min_u<TAB>excluded` with a header line.
void write_sweep(const RobustnessReport& report, const std::filesystem::path& path);

}  // namespace translid
