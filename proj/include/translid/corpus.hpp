#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "translid/tokenizer.hpp"

namespace translid {

// Binary language tag.  Label 1 is the first language named on the command
// line, label 0 the second.
using Label = std::uint8_t;

struct LabeledWord {
  std::string text;  // [a-z]+
  Label label = 0;

  friend bool operator==(const LabeledWord&, const LabeledWord&) = default;
};

struct Corpus {
  std::vector<LabeledWord> words;
  std::map<Label, std::string> language_names;

  std::size_t size() const { return words.size(); }
  bool empty() const { return words.empty(); }
  std::size_t count(Label label) const;
  bool has_both_labels() const { return count(0) > 0 && count(1) > 0; }
  std::string language_name(Label label) const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Lowercases ASCII letters and drops every other byte (including the bytes of
// multi-byte UTF-8 sequences, so accented letters disappear).  Returns
// nullopt when nothing survives.
std::optional<std::string> normalize_word(std::string_view raw);

struct LoadResult {
  Corpus corpus;
  std::size_t rejected = 0;  // tokens with no surviving letters
};

LoadResult load_corpus(const std::filesystem::path& path, Label label,
                       std::string language_name = {});
Corpus parse_corpus(std::string_view text, Label label, std::string language_name = {});

// Concatenates corpora in order; language names are merged.
Corpus concat(const Corpus& a, const Corpus& b);

// Writes the words carrying `label`, one per line.
void write_corpus(const Corpus& corpus, Label label, const std::filesystem::path& path);

struct SplitSpec {
  double train_fraction = 0.9;
  double val_fraction = 0.1;
  std::uint64_t seed = 0;
};

struct Split {
  Corpus train;
  Corpus val;
  Corpus test;
};

// Stratified seeded split.  Totals are round(fraction * n) (val takes the
// remainder when the fractions sum to one) and each label receives its
// largest-remainder share, so per-label proportions hold to within one word.
Split split(const Corpus& corpus, const SplitSpec& spec);

// Histogram keyed by value (syllables per word, or characters per syllable).
using Histogram = std::map<std::size_t, std::size_t>;

struct SyllableStats {
  std::map<Label, Histogram> syllables_per_word;
  std::map<Label, Histogram> syllable_length;
};

SyllableStats syllable_stats(const Corpus& corpus, const Tokenizer& tokenizer);

// `value<TAB>count` lines in increasing value order.
void write_histogram(const Histogram& histogram, const std::filesystem::path& path);

// Writes syllables_per_word.<name>.tsv and syllable_length.<name>.tsv for
// each label into `dir`.  Returns the paths written.
std::vector<std::filesystem::path> write_stats(const SyllableStats& stats, const Corpus& corpus,
                                               const std::filesystem::path& dir);

struct SyntheticLanguage {
  std::string name;
  std::vector<std::string> syllables;
  // Relative weights of words made of 1, 2, 3, 4 syllables.
  std::array<double, 4> length_weights{0.25, 0.4, 0.25, 0.1};
};

// n words per language.  Label 1 is drawn from `first`, label 0 from
// `second`; the output is interleaved lang1, lang0, lang1, ...
Corpus generate_synthetic(const SyntheticLanguage& first, const SyntheticLanguage& second,
                          std::size_t n_per_language, std::uint64_t seed);

// Built-in syllable inventories.  "demo" has disjoint letter-pair inventories;
// "hard" shares every consonant and vowel between the two languages and only
// differs in which consonant-vowel pairings occur.
std::pair<SyntheticLanguage, SyntheticLanguage> synthetic_preset(std::string_view name);

}  // namespace translid
