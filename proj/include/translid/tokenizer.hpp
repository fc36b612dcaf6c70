#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace translid {

// One Liang pattern.  `priorities[k]` is the digit in the gap before
// letters[k]; the last entry is the gap after the final letter.
struct HyphenPattern {
  std::string letters;
  bool anchored_start = false;  // leading '.'
  bool anchored_end = false;    // trailing '.'
  std::vector<std::uint8_t> priorities;  // size letters.size() + 1

  friend bool operator==(const HyphenPattern&, const HyphenPattern&) = default;
};

// Parses a single interleaved pattern such as "a1ca" or ".ab3ol".  Throws
// Error(kData) on malformed input.
HyphenPattern parse_pattern(std::string_view text);

// Compiled hyphenation patterns.  Immutable after construction; all queries
// are const and safe to call concurrently.
class PatternSet {
 public:
  static constexpr int kDefaultLeftMin = 2;
  static constexpr int kDefaultRightMin = 2;

  PatternSet(std::vector<HyphenPattern> patterns,
             std::map<std::string, std::vector<int>> exceptions = {},
             int left_min = kDefaultLeftMin, int right_min = kDefaultRightMin);

  // Plain text, one pattern per line.  Recognized extras: `LEFTMIN k`,
  // `RIGHTMIN k`, `%` comments, and exception words written with explicit
  // hyphens ("ta-vo-lo") which override the patterns for that exact word.
  static PatternSet load(const std::filesystem::path& path);
  static PatternSet parse(std::string_view text);

  // Gap indices g (break between word[g-1] and word[g]) in increasing
  // order, restricted to [left_min, size - right_min].
  std::vector<int> hyphenation_points(std::string_view word) const;

  std::size_t size() const { return patterns_.size(); }
  const std::vector<HyphenPattern>& patterns() const { return patterns_; }
  int left_min() const { return left_min_; }
  int right_min() const { return right_min_; }

  // MD5 of the source text (or of the canonical re-serialization for sets
  // built in memory).  Stored in model files to detect pattern drift.
  const std::array<std::uint8_t, 16>& checksum() const { return checksum_; }

 private:
  static constexpr int kAlphabet = 27;  // a-z and '.'
  struct Node {
    std::array<std::int32_t, kAlphabet> next;
    std::int32_t pattern = -1;
    Node() { next.fill(-1); }
  };

  void insert(std::size_t index);

  std::vector<HyphenPattern> patterns_;
  std::map<std::string, std::vector<int>> exceptions_;
  std::vector<Node> trie_;
  int left_min_;
  int right_min_;
  std::array<std::uint8_t, 16> checksum_{};

};

// A word cut into phonetic syllables; join(syllables) == source.
struct SyllableSequence {
  std::vector<std::string> syllables;
  std::string source;
};

std::vector<int> hyphenation_points(std::string_view word, const PatternSet& patterns);
SyllableSequence tokenize_phonetic(std::string_view word, const PatternSet& patterns);

// Baseline tokenizer: one token per character.
std::vector<std::string> tokenize_chars(std::string_view word);

enum class TokenizerMode : std::uint8_t { kPhonetic = 0, kChars = 1 };

std::string_view to_string(TokenizerMode mode);
TokenizerMode parse_mode(std::string_view text);

// Mode-dispatching tokenizer.  The pattern set must outlive it and is only
// required for kPhonetic.
class Tokenizer {
 public:
  explicit Tokenizer(const PatternSet& patterns)
      : mode_(TokenizerMode::kPhonetic), patterns_(&patterns) {}
  static Tokenizer chars() { return Tokenizer(); }
  static Tokenizer make(TokenizerMode mode, const PatternSet* patterns);

  TokenizerMode mode() const { return mode_; }
  const PatternSet* patterns() const { return patterns_; }

  std::vector<std::string> tokenize(std::string_view word) const;

 private:
  Tokenizer() : mode_(TokenizerMode::kChars), patterns_(nullptr) {}

  TokenizerMode mode_;
  const PatternSet* patterns_;
};

}  // namespace translid
