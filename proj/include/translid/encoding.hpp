#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "translid/tokenizer.hpp"

namespace translid {

// Model input.  ids lie in [1, vocab_size]; 0 is the padding id and is never
// produced by the encoders.
struct EncodedSequence {
  std::vector<std::uint32_t> ids;
  TokenizerMode mode = TokenizerMode::kPhonetic;
  std::uint32_t vocab_size = 0;

  std::size_t size() const { return ids.size(); }
  friend bool operator==(const EncodedSequence&, const EncodedSequence&) = default;
};

inline constexpr std::uint32_t kDefaultHashVocab = 4096;
inline constexpr std::uint32_t kAlphabetVocab = 26;

// 1 + (first 8 digest bytes as a big-endian integer) mod vocab_size.
std::uint32_t hash_token_md5(std::string_view token, std::uint32_t vocab_size);

EncodedSequence encode_phonetic(const SyllableSequence& syllables, std::uint32_t vocab_size);
EncodedSequence encode_tokens(std::span<const std::string> tokens, std::uint32_t vocab_size);

// 'a' -> 1 ... 'z' -> 26.
EncodedSequence encode_chars(std::span<const std::string> chars);

// Tokenizes and encodes a normalized word with the settings a model was
// trained with.
class Encoder {
 public:
  Encoder(Tokenizer tokenizer, std::uint32_t vocab_size);

  EncodedSequence encode(std::string_view word) const;
  TokenizerMode mode() const { return tokenizer_.mode(); }
  std::uint32_t vocab_size() const { return vocab_size_; }

 private:
  Tokenizer tokenizer_;
  std::uint32_t vocab_size_;
};

}  // namespace translid
