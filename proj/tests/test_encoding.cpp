#include <gtest/gtest.h>

#include <cstdlib>

#include "test_util.hpp"
#include "translid/encoding.hpp"
#include "translid/error.hpp"
#include "translid/md5.hpp"

using namespace translid;

TEST(Md5, Rfc1321Vectors) {
  EXPECT_EQ(to_hex(md5("")), "d41d8cd98f00b204e9800998ecf8427e");
  EXPECT_EQ(to_hex(md5("a")), "0cc175b9c0f1b6a831c399e269772661");
  EXPECT_EQ(to_hex(md5("abc")), "900150983cd24fb0d6963f7d28e17f72");
  EXPECT_EQ(to_hex(md5("message digest")), "f96b697d7cb7938d525a2f31aaf161d0");
  EXPECT_EQ(to_hex(md5("abcdefghijklmnopqrstuvwxyz")), "c3fcd3d76192e4007dfb496cca67e13b");
  EXPECT_EQ(to_hex(md5("12345678901234567890123456789012345678901234567890123456789012345678901234567890")),
            "57edf4a22be3c955ac49da2e2107b67a");
}

// Digests and ids from Python's hashlib; see tests/oracles/make_md5_oracle.py.
TEST(HashToken, MatchesOracleTable) {
  const auto rows = testutil::read_tsv(testutil::test_data_dir() / "md5_oracle.tsv");
  ASSERT_GE(rows.size(), 20u);
  for (const auto& r : rows) {
    ASSERT_EQ(r.size(), 5u);
    EXPECT_EQ(to_hex(md5(r[0])), r[1]) << r[0];
    EXPECT_EQ(hash_token_md5(r[0], 4096), std::strtoul(r[2].c_str(), nullptr, 10)) << r[0];
    EXPECT_EQ(hash_token_md5(r[0], 1000003), std::strtoul(r[3].c_str(), nullptr, 10)) << r[0];
    EXPECT_EQ(hash_token_md5(r[0], 26), std::strtoul(r[4].c_str(), nullptr, 10)) << r[0];
  }
}

TEST(HashToken, KnownValues) {
  EXPECT_EQ(hash_token_md5("ta", 4096), 2253u);
  EXPECT_EQ(hash_token_md5("gi", 4096), hash_token_md5("gi", 4096));
  EXPECT_EQ(hash_token_md5("anything", 1), 1u);
  EXPECT_THROW(hash_token_md5("", 10), Error);
  EXPECT_THROW(hash_token_md5("a", 0), Error);
}

TEST(HashToken, RangeAndSpread) {
  // Ids stay in [1, V] and bucket counts pass a chi-square uniformity check.
  constexpr std::uint32_t V = 64;
  std::vector<int> counts(V + 1, 0);
  for (int i = 0; i < 2000; ++i) {
    const auto id = hash_token_md5("tok" + std::to_string(i), V);
    ASSERT_GE(id, 1u);
    ASSERT_LE(id, V);
    ++counts[id];
  }
  EXPECT_EQ(counts[0], 0);
  double chi2 = 0;
  const double expected = 2000.0 / V;
  for (std::uint32_t k = 1; k <= V; ++k) chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
  // 63 degrees of freedom, 0.999 quantile about 103.4.
  EXPECT_LT(chi2, 103.4);
}

TEST(EncodePhonetic, ThreeSyllables) {
  SyllableSequence seq{{"bha", "lo", "ba"}, "bhaloba"};
  const auto e = encode_phonetic(seq, 4096);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e.mode, TokenizerMode::kPhonetic);
  EXPECT_EQ(e.vocab_size, 4096u);
  const auto rows = testutil::read_tsv(testutil::test_data_dir() / "md5_oracle.tsv");
  std::map<std::string, std::uint32_t> oracle;
  for (const auto& r : rows) oracle[r[0]] = static_cast<std::uint32_t>(std::strtoul(r[2].c_str(), nullptr, 10));
  ASSERT_TRUE(oracle.count("bha") && oracle.count("lo") && oracle.count("ba"));
  EXPECT_EQ(e.ids, (std::vector<std::uint32_t>{oracle["bha"], oracle["lo"], oracle["ba"]}));
}

TEST(EncodePhonetic, SingleSyllableInRange) {
  const std::vector<std::string> one{"a"};
  const auto e = encode_tokens(one, 100);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_GE(e.ids[0], 1u);
  EXPECT_LE(e.ids[0], 100u);
}

TEST(EncodeChars, AlphabeticIndex) {
  auto enc = [](std::string_view w) { return encode_chars(tokenize_chars(w)).ids; };
  EXPECT_EQ(enc("abz"), (std::vector<std::uint32_t>{1, 2, 26}));
  EXPECT_EQ(enc("a"), (std::vector<std::uint32_t>{1}));
  EXPECT_EQ(enc("korean"), (std::vector<std::uint32_t>{11, 15, 18, 5, 1, 14}));
  const std::vector<std::string> bad{"A"};
  EXPECT_THROW(encode_chars(bad), Error);
}

TEST(Encoder, CharsModeForcesAlphabetVocab) {
  const Encoder e(Tokenizer::chars(), 4096);
  EXPECT_EQ(e.vocab_size(), kAlphabetVocab);
  EXPECT_EQ(e.encode("ba").ids, (std::vector<std::uint32_t>{2, 1}));
  const Encoder p(Tokenizer(testutil::italian()), 4096);
  const auto seq = p.encode("gita");
  EXPECT_EQ(seq.ids, (std::vector<std::uint32_t>{hash_token_md5("gi", 4096), hash_token_md5("ta", 4096)}));
}
