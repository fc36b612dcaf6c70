#include "translid/tokenizer.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "translid/error.hpp"
#include "translid/md5.hpp"

namespace translid {
namespace {

bool is_letter(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

int symbol(char c) { return c == '.' ? 26 : c - 'a'; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

Error malformed(std::string_view line, std::string_view why) {
  return Error(ErrorCode::kData,
               "malformed pattern line '" + std::string(line) + "': " + std::string(why));
}

std::string serialize(const HyphenPattern& p) {
  std::string out;
  if (p.anchored_start) out.push_back('.');
  for (std::size_t k = 0; k <= p.letters.size(); ++k) {
    if (p.priorities[k] != 0) out.push_back(static_cast<char>('0' + p.priorities[k]));
    if (k < p.letters.size()) out.push_back(p.letters[k]);
  }
  if (p.anchored_end) out.push_back('.');
  return out;
}

}  // namespace

HyphenPattern parse_pattern(std::string_view text) {
  HyphenPattern p;
  std::string_view body = text;
  if (!body.empty() && body.front() == '.') {
    p.anchored_start = true;
    body.remove_prefix(1);
  }
  if (!body.empty() && body.back() == '.') {
    p.anchored_end = true;
    body.remove_suffix(1);
  }
  p.priorities.push_back(0);
  bool digit_pending = false;
  for (char c : body) {
    if (is_digit(c)) {
      if (digit_pending) throw malformed(text, "adjacent digits");
      p.priorities.back() = static_cast<std::uint8_t>(c - '0');
      digit_pending = true;
    } else if (is_letter(c)) {
      p.letters.push_back(c);
      p.priorities.push_back(0);
      digit_pending = false;
    } else if (c == '.') {
      throw malformed(text, "'.' only allowed at either end");
    } else {
      throw malformed(text, "character outside a-z");
    }
  }
  if (p.letters.empty()) throw malformed(text, "no letters");
  return p;
}

PatternSet::PatternSet(std::vector<HyphenPattern> patterns,
                       std::map<std::string, std::vector<int>> exceptions, int left_min,
                       int right_min)
    : patterns_(std::move(patterns)),
      exceptions_(std::move(exceptions)),
      left_min_(left_min),
      right_min_(right_min) {
  if (left_min_ < 1 || right_min_ < 1)
    throw Error(ErrorCode::kInvalidArgument, "left_min and right_min must be >= 1");
  if (patterns_.empty() && exceptions_.empty())
    throw Error(ErrorCode::kData, "empty pattern set");
  trie_.emplace_back();
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    const auto& p = patterns_[i];
    if (p.priorities.size() != p.letters.size() + 1)
      throw Error(ErrorCode::kInvalidArgument, "priority vector length must be letters + 1");
    if (std::any_of(p.priorities.begin(), p.priorities.end(), [](auto d) { return d > 9; }))
      throw Error(ErrorCode::kInvalidArgument, "priority digit out of range");
    insert(i);
  }

  std::string canonical = "LEFTMIN " + std::to_string(left_min_) + "\nRIGHTMIN " +
                          std::to_string(right_min_) + "\n";
  for (const auto& p : patterns_) canonical += serialize(p) + "\n";
  checksum_ = md5(canonical);
}

void PatternSet::insert(std::size_t index) {
  const auto& p = patterns_[index];
  std::string key;
  if (p.anchored_start) key.push_back('.');
  key += p.letters;
  if (p.anchored_end) key.push_back('.');

  std::int32_t node = 0;
  for (char c : key) {
    auto& next = trie_[node].next[symbol(c)];
    if (next < 0) {
      next = static_cast<std::int32_t>(trie_.size());
      trie_.emplace_back();  // may reallocate; `next` is not used afterwards
      node = static_cast<std::int32_t>(trie_.size() - 1);
    } else {
      node = next;
    }
  }
  // Later duplicates replace earlier ones, as in the common .dic readers.
  trie_[node].pattern = static_cast<std::int32_t>(index);
}

PatternSet PatternSet::parse(std::string_view text) {
  std::vector<HyphenPattern> patterns;
  std::map<std::string, std::vector<int>> exceptions;
  int left = kDefaultLeftMin;
  int right = kDefaultRightMin;

  auto read_int = [](std::string_view line, std::string_view value) {
    int v = 0;
    value = trim(value);
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || v < 1)
      throw malformed(line, "expected a positive integer");
    return v;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '%' || line.front() == '#') continue;

    if (line.starts_with("LEFTMIN")) {
      left = read_int(line, line.substr(7));
    } else if (line.starts_with("RIGHTMIN")) {
      right = read_int(line, line.substr(8));
    } else if (line.find('-') != std::string_view::npos) {
      std::string word;
      std::vector<int> breaks;
      for (char c : line) {
        if (c == '-') {
          if (word.empty() || (!breaks.empty() && breaks.back() == static_cast<int>(word.size())))
            throw malformed(line, "misplaced hyphen in exception word");
          breaks.push_back(static_cast<int>(word.size()));
        } else if (is_letter(c)) {
          word.push_back(c);
        } else {
          throw malformed(line, "exception words may only contain a-z and '-'");
        }
      }
      if (breaks.back() == static_cast<int>(word.size()))
        throw malformed(line, "trailing hyphen in exception word");
      exceptions[word] = std::move(breaks);
    } else {
      patterns.push_back(parse_pattern(line));
    }
  }
  if (patterns.empty() && exceptions.empty()) throw Error(ErrorCode::kData, "empty pattern file");
  return PatternSet(std::move(patterns), std::move(exceptions), left, right);
}

PatternSet PatternSet::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open pattern file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  PatternSet set = parse(text);
  set.checksum_ = md5(text);
  return set;
}

std::vector<int> PatternSet::hyphenation_points(std::string_view word) const {
  const int len = static_cast<int>(word.size());
  if (auto it = exceptions_.find(std::string(word)); it != exceptions_.end()) return it->second;

  std::vector<int> result;
  if (len < left_min_ + right_min_) return result;

  std::string padded;
  padded.reserve(word.size() + 2);
  padded.push_back('.');
  padded.append(word);
  padded.push_back('.');

  // gaps[g] is the running maximum for the break before word[g].
  std::vector<std::uint8_t> gaps(word.size() + 1, 0);
  const int plen = static_cast<int>(padded.size());
  for (int start = 0; start < plen; ++start) {
    std::int32_t node = 0;
    for (int j = start; j < plen; ++j) {
      const char c = padded[j];
      if (c != '.' && !is_letter(c)) break;
      node = trie_[node].next[symbol(c)];
      if (node < 0) break;
      const auto idx = trie_[node].pattern;
      if (idx < 0) continue;
      const auto& p = patterns_[idx];
      // Word index of the pattern's first letter.
      const int first = p.anchored_start ? start : start - 1;
      for (std::size_t k = 0; k < p.priorities.size(); ++k) {
        const int g = first + static_cast<int>(k);
        if (g >= 0 && g <= len) gaps[g] = std::max(gaps[g], p.priorities[k]);
      }
    }
  }
  for (int g = left_min_; g <= len - right_min_; ++g)
    if (gaps[g] % 2 == 1) result.push_back(g);
  return result;
}

std::vector<int> hyphenation_points(std::string_view word, const PatternSet& patterns) {
  return patterns.hyphenation_points(word);
}

SyllableSequence tokenize_phonetic(std::string_view word, const PatternSet& patterns) {
  SyllableSequence seq;
  seq.source = std::string(word);
  int prev = 0;
  for (int g : patterns.hyphenation_points(word)) {
    seq.syllables.emplace_back(word.substr(prev, g - prev));
    prev = g;
  }
  seq.syllables.emplace_back(word.substr(prev));
  return seq;
}

std::vector<std::string> tokenize_chars(std::string_view word) {
  std::vector<std::string> out;
  out.reserve(word.size());
  for (char c : word) out.emplace_back(1, c);
  return out;
}

std::string_view to_string(TokenizerMode mode) {
  return mode == TokenizerMode::kPhonetic ? "phonetic" : "chars";
}

TokenizerMode parse_mode(std::string_view text) {
  if (text == "phonetic") return TokenizerMode::kPhonetic;
  if (text == "chars") return TokenizerMode::kChars;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown tokenizer mode '" + std::string(text) + "' (phonetic|chars)");
}

Tokenizer Tokenizer::make(TokenizerMode mode, const PatternSet* patterns) {
  if (mode == TokenizerMode::kChars) return chars();
  if (patterns == nullptr)
    throw Error(ErrorCode::kInvalidArgument, "phonetic tokenizer requires a pattern set");
  return Tokenizer(*patterns);
}

std::vector<std::string> Tokenizer::tokenize(std::string_view word) const {
  if (mode_ == TokenizerMode::kChars) return tokenize_chars(word);
  return tokenize_phonetic(word, *patterns_).syllables;
}

}  // namespace translid
