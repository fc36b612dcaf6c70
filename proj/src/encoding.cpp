#include "translid/encoding.hpp"

#include "translid/error.hpp"
#include "translid/md5.hpp"

namespace translid {

std::uint32_t hash_token_md5(std::string_view token, std::uint32_t vocab_size) {
  if (token.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot hash an empty token");
  if (vocab_size == 0) throw Error(ErrorCode::kInvalidArgument, "vocab size must be >= 1");
  const auto digest = md5(token);
  std::uint64_t prefix = 0;
  for (int i = 0; i < 8; ++i) prefix = (prefix << 8) | digest[i];
  return 1 + static_cast<std::uint32_t>(prefix % vocab_size);
}

EncodedSequence encode_tokens(std::span<const std::string> tokens, std::uint32_t vocab_size) {
  EncodedSequence seq{{}, TokenizerMode::kPhonetic, vocab_size};
  seq.ids.reserve(tokens.size());
  for (const auto& t : tokens) seq.ids.push_back(hash_token_md5(t, vocab_size));
  return seq;
}

EncodedSequence encode_phonetic(const SyllableSequence& syllables, std::uint32_t vocab_size) {
  return encode_tokens(syllables.syllables, vocab_size);
}

EncodedSequence encode_chars(std::span<const std::string> chars) {
  EncodedSequence seq{{}, TokenizerMode::kChars, kAlphabetVocab};
  seq.ids.reserve(chars.size());
  for (const auto& c : chars) {
    if (c.size() != 1 || c[0] < 'a' || c[0] > 'z')
      throw Error(ErrorCode::kInvalidArgument, "character token '" + c + "' outside a-z");
    seq.ids.push_back(static_cast<std::uint32_t>(c[0] - 'a' + 1));
  }
  return seq;
}

Encoder::Encoder(Tokenizer tokenizer, std::uint32_t vocab_size)
    : tokenizer_(tokenizer), vocab_size_(vocab_size) {
  if (tokenizer_.mode() == TokenizerMode::kChars) vocab_size_ = kAlphabetVocab;
  if (vocab_size_ == 0) throw Error(ErrorCode::kInvalidArgument, "vocab size must be >= 1");
}

EncodedSequence Encoder::encode(std::string_view word) const {
  const auto tokens = tokenizer_.tokenize(word);
  if (tokenizer_.mode() == TokenizerMode::kChars) return encode_chars(tokens);
  return encode_tokens(tokens, vocab_size_);
}

}  // namespace translid
