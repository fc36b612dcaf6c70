#include <gtest/gtest.h>

#include "test_util.hpp"
#include "translid/error.hpp"
#include "translid/robustness.hpp"

using namespace translid;

namespace {

// Pair counting in integers (ties count 1, wins 2) so the fold is exact.
double brute_min_u(const std::vector<double>& b, const std::vector<double>& a) {
  std::uint64_t twice = 0;
  for (double x : b)
    for (double y : a) twice += y > x ? 2 : y == x ? 1 : 0;
  const std::uint64_t all = 2 * b.size() * a.size();
  return static_cast<double>(std::min(twice, all - twice)) / static_cast<double>(all);
}

// Chars-mode model whose score falls as the word gets longer.
TrainedModel length_sensitive_model() {
  TrainedModel m;
  m.hyper = {26, 1, 1, 0.0, 0.0, 0};
  m.mode = TokenizerMode::kChars;
  m.params = ModelParams(26, 1, 1);
  for (std::uint32_t id = 1; id <= 26; ++id) m.params.embedding_row(id)[0] = 0.1 * id;
  m.params.input_weight(Gate::kInput, 0, 0) = 1.0;
  m.params.input_weight(Gate::kCell, 0, 0) = 1.0;
  m.params.gate_bias(Gate::kOutput)[0] = 2.0;
  m.params.output_weights()[0] = 3.0;
  m.params.output_bias() = -1.0;
  m.language_names = {{1, "one"}, {0, "zero"}};
  return m;
}

Corpus small_test() {
  Corpus c;
  c.words = {{"gita", 1}, {"amore", 0}, {"krk", 1}, {"kamo", 0}, {"bhalo", 1}, {"saranghae", 0}};
  return c;
}

}  // namespace

TEST(Perturb, NoVowelsUnchanged) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(perturb_word("krk", PerturbationConfig{3, "aeiou", seed}, rng), "krk");
  }
}

TEST(Perturb, CountOneIsIdentity) {
  const CountDraw one = [](std::uint32_t) { return 1u; };
  for (const char* w : {"gita", "saranghae", "aeiou", "bhalobasha"}) EXPECT_EQ(perturb_word(w, "aeiou", 5, one), w);
}

TEST(Perturb, DrawsReplaceEachVowel) {
  std::vector<std::uint32_t> draws{0, 3, 2};
  std::size_t k = 0;
  const CountDraw scripted = [&](std::uint32_t) { return draws[k++]; };
  EXPECT_EQ(perturb_word("amore", "aeiou", 3, scripted), "moooree");
  EXPECT_EQ(k, 3u);
}

TEST(Perturb, GitaWithPinnedSeed) {
  // With seed 7 the first two draws from U{0..3} are 3 then 2.
  Rng probe(7);
  EXPECT_EQ(probe.uniform_below(4), 3u);
  EXPECT_EQ(probe.uniform_below(4), 2u);
  Rng rng(7);
  EXPECT_EQ(perturb_word("gita", PerturbationConfig{3, "aeiou", 7}, rng), "giiitaa");
}

TEST(Perturb, LengthAndLettersProperty) {
  Rng rng(12);
  for (int t = 0; t < 2000; ++t) {
    const std::string w = "bhalobashasaranghae";
    const std::uint32_t N = static_cast<std::uint32_t>(rng.uniform_below(6));
    const auto p = perturb_word(w, PerturbationConfig{N, "aeiou", 0}, rng);
    // Consonant skeleton is preserved; vowel count within [0, N] times the original.
    auto skeleton = [](std::string_view s, std::size_t& vowels) {
      std::string out;
      vowels = 0;
      for (char c : s) {
        if (std::string_view("aeiou").find(c) == std::string_view::npos) out.push_back(c);
        else ++vowels;
      }
      return out;
    };
    std::size_t vw = 0, vp = 0;
    const auto cw = skeleton(w, vw);
    const auto cp = skeleton(p, vp);
    EXPECT_EQ(cw, cp);
    EXPECT_LE(vp, N * vw);
  }
}

TEST(Perturb, RejectsDrawAboveN) {
  const CountDraw bad = [](std::uint32_t n) { return n + 1; };
  EXPECT_THROW(perturb_word("ga", "aeiou", 2, bad), Error);
}

TEST(Scores, CorrectClassScore) {
  EXPECT_EQ(correct_class_score(0.7, 0), 1.0 - 0.7);
  EXPECT_EQ(correct_class_score(0.2, 1), 0.2);
  TrainedModel zero = length_sensitive_model();
  zero.params.fill(0.0);
  const Classifier clf(zero, nullptr);
  EXPECT_EQ(correct_class_score(clf, "abc", 0), 0.5);
  EXPECT_EQ(correct_class_score(clf, "abc", 1), 0.5);
}

TEST(Scores, FractionalDifference) {
  EXPECT_EQ(fractional_difference(0.3, 0.3), 0.0);
  EXPECT_DOUBLE_EQ(*fractional_difference(0.2, 0.4), 1.0);
  EXPECT_EQ(fractional_difference(1e-12, 0.4), std::nullopt);
  EXPECT_EQ(fractional_difference(1e-9, 0.4), std::nullopt);
}

TEST(Stats, SigmaAndCv) {
  const std::vector<double> same{0.4, 0.4, 0.4};
  EXPECT_EQ(sigma_correctscore(same), 0.0);
  const std::vector<double> pm{-1.0, 1.0};
  EXPECT_EQ(sigma_correctscore(pm), 1.0);
  const std::vector<double> ends{0.0, 1.0};
  EXPECT_EQ(cv_correctscore(ends), 1.0);
  EXPECT_THROW(cv_correctscore(same), Error);
  const std::vector<double> one{0.3};
  EXPECT_THROW(sigma_correctscore(one), Error);
  const std::vector<double> odd{3, 1, 2};
  EXPECT_EQ(median(odd), 2.0);
}

TEST(MinU, WorkedExamples) {
  const std::vector<double> b{0.1, 0.5}, a{0.3, 0.7};
  EXPECT_EQ(min_u(b, a), 0.25);
  EXPECT_EQ(min_u(b, b), 0.5);
  const std::vector<double> hi{0.8, 0.9, 0.95}, lo{0.1, 0.2};
  EXPECT_EQ(min_u(hi, lo), 0.0);
  EXPECT_EQ(min_u(lo, hi), 0.0);
}

TEST(MinU, MatchesPairCountingWithTies) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> b(1 + gen() % 40), a(1 + gen() % 40);
    for (auto& x : b) x = static_cast<double>(gen() % 8) / 8.0;
    for (auto& x : a) x = static_cast<double>(gen() % 8) / 8.0;
    EXPECT_EQ(min_u(b, a), brute_min_u(b, a));
    EXPECT_EQ(min_u(b, a), min_u(a, b));
    EXPECT_LE(min_u(b, a), 0.5);
  }
}

TEST(Spearman, KnownValues) {
  const std::vector<double> x{1, 2, 3, 4, 5}, up{0.1, 0.2, 0.3, 0.5, 0.9}, down{5, 4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(spearman(x, up), 1.0);
  EXPECT_DOUBLE_EQ(spearman(x, down), -1.0);
  const std::vector<double> tied{1, 1, 2, 2, 3};
  // Average ranks 1.5,1.5,3.5,3.5,5 against 1..5.
  EXPECT_NEAR(spearman(x, tied), 0.9486832980505138, 1e-15);
}

TEST(Robustness, IdentityPerturbationGivesZeroSigmaAndHalfU) {
  const auto m = length_sensitive_model();
  const Classifier clf(m, nullptr);
  const Perturber identity = [](std::string_view w, std::uint32_t N, std::size_t) {
    return perturb_word(w, "aeiou", N, [](std::uint32_t) { return 1u; });
  };
  for (auto pooling : {UPooling::kPooled, UPooling::kPerLanguage}) {
    const auto row = measure_robustness(clf, small_test(), 4, identity, pooling);
    EXPECT_EQ(row.sigma, 0.0);
    EXPECT_EQ(row.min_u, 0.5);
    EXPECT_EQ(row.excluded, 0u);
    EXPECT_EQ(row.scored, 6u);
    EXPECT_EQ(row.ratio, 0.0);
  }
}

TEST(Robustness, ExcludesEmptyPerturbations) {
  const auto m = length_sensitive_model();
  const Classifier clf(m, nullptr);
  const Perturber drop_all = [](std::string_view w, std::uint32_t, std::size_t) {
    return perturb_word(w, "aeiou", 0, [](std::uint32_t) { return 0u; });
  };
  Corpus c = small_test();
  c.words.push_back({"aie", 0});  // vanishes entirely
  const auto row = measure_robustness(clf, c, 0, drop_all);
  EXPECT_EQ(row.excluded, 1u);
  EXPECT_EQ(row.scored, 6u);
}

TEST(Robustness, SweepIsSeededAndWritesTsv) {
  const auto m = length_sensitive_model();
  const Classifier clf(m, nullptr);
  SweepOptions opt;
  opt.seed = 11;
  const auto a = sweep(clf, small_test(), opt);
  const auto b = sweep(clf, small_test(), opt);
  ASSERT_EQ(a.rows.size(), 5u);
  EXPECT_EQ(a.rows, b.rows);
  const auto dir = testutil::scratch("sweep");
  write_sweep(a, dir / "sweep.tsv");
  const auto rows = testutil::read_tsv(dir / "sweep.tsv");
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"N", "sigma", "cv", "ratio", "min_u", "excluded"}));
  EXPECT_EQ(rows[1][0], "1");
  for (const auto& r : a.rows) {
    EXPECT_GE(r.min_u, 0.0);
    EXPECT_LE(r.min_u, 0.5);
    EXPECT_GE(r.sigma, 0.0);
  }
}

TEST(Robustness, DedupeLevels) {
  bool dup = false;
  EXPECT_EQ(dedupe_levels({3, 1, 3, 2}, &dup), (std::vector<std::uint32_t>{1, 2, 3}));
  EXPECT_TRUE(dup);
  EXPECT_EQ(dedupe_levels({1, 2}, &dup), (std::vector<std::uint32_t>{1, 2}));
  EXPECT_FALSE(dup);
}
