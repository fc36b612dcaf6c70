#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "test_util.hpp"
#include "translid/translid.h"

namespace {

std::string pattern_path() { return testutil::italian_patterns_path().string(); }

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(tl_version(), "1.0.0");
  EXPECT_STREQ(tl_status_name(TL_OK), "ok");
  EXPECT_STREQ(tl_status_name(TL_ERR_CORRUPT), "corrupt model file");
}

TEST(CApi, NormalizeWithBufferProtocol) {
  size_t needed = 0;
  int accepted = 0;
  EXPECT_EQ(tl_normalize_word("Amar'e", nullptr, 0, &needed, &accepted), TL_ERR_BUFFER_TOO_SMALL);
  EXPECT_EQ(needed, 6u);
  std::vector<char> buf(needed);
  ASSERT_EQ(tl_normalize_word("Amar'e", buf.data(), buf.size(), &needed, &accepted), TL_OK);
  EXPECT_STREQ(buf.data(), "amare");
  EXPECT_EQ(accepted, 1);
  ASSERT_EQ(tl_normalize_word("123", buf.data(), buf.size(), &needed, &accepted), TL_OK);
  EXPECT_EQ(accepted, 0);
  EXPECT_EQ(tl_normalize_word(nullptr, buf.data(), buf.size(), &needed, &accepted), TL_ERR_ARGUMENT);
}

TEST(CApi, PatternsAndHyphenation) {
  tl_patterns* p = nullptr;
  ASSERT_EQ(tl_patterns_load(pattern_path().c_str(), &p), TL_OK) << tl_last_error();
  EXPECT_GT(tl_patterns_count(p), 100u);
  char buf[64];
  ASSERT_EQ(tl_patterns_hyphenate(p, "gita", buf, sizeof buf, nullptr), TL_OK);
  EXPECT_STREQ(buf, "gi-ta");
  tl_patterns_free(p);
  EXPECT_EQ(tl_patterns_load("/nonexistent.pat", &p), TL_ERR_IO);
  EXPECT_EQ(p, nullptr);
  EXPECT_NE(std::string(tl_last_error()).find("nonexistent"), std::string::npos);
}

TEST(CApi, EndToEnd) {
  const auto dir = testutil::scratch("capi");
  tl_patterns* patterns = nullptr;
  ASSERT_EQ(tl_patterns_load(pattern_path().c_str(), &patterns), TL_OK);

  tl_corpus* all = nullptr;
  ASSERT_EQ(tl_synth_generate_preset("demo", 300, 1, &all), TL_OK) << tl_last_error();
  EXPECT_EQ(tl_corpus_size(all), 600u);
  EXPECT_EQ(tl_corpus_count(all, 1), 300u);
  EXPECT_STREQ(tl_corpus_language_name(all, 1), "bangla");

  tl_corpus *tr = nullptr, *va = nullptr, *te = nullptr;
  ASSERT_EQ(tl_corpus_split(all, 0.7, 0.1, 2, &tr, &va, &te), TL_OK);
  EXPECT_EQ(tl_corpus_size(tr) + tl_corpus_size(va) + tl_corpus_size(te), 600u);

  tl_train_options opt;
  tl_train_options_init(&opt);
  EXPECT_EQ(opt.vocab_size, 4096u);
  EXPECT_EQ(opt.batch_size, 64u);
  EXPECT_EQ(opt.patience, 3u);
  opt.max_epochs = 8;
  opt.learning_rate = 0.01;
  tl_model* model = nullptr;
  tl_train_summary summary{};
  const auto history = (dir / "history.tsv").string();
  ASSERT_EQ(tl_train(tr, va, patterns, &opt, history.c_str(), &model, &summary), TL_OK) << tl_last_error();
  EXPECT_GE(summary.epochs_run, 1u);
  EXPECT_LE(summary.epochs_run, 8u);
  EXPECT_EQ(testutil::read_tsv(history).size(), summary.epochs_run + 2);

  const auto path = (dir / "m.bin").string();
  ASSERT_EQ(tl_model_save(model, path.c_str()), TL_OK);
  tl_model* loaded = nullptr;
  ASSERT_EQ(tl_model_load(path.c_str(), &loaded), TL_OK);
  tl_model_info info{};
  ASSERT_EQ(tl_model_get_info(loaded, &info), TL_OK);
  EXPECT_EQ(info.mode, TL_MODE_PHONETIC);
  EXPECT_EQ(info.vocab_size, 4096u);
  EXPECT_EQ(info.parameter_count, 4097u * 8 + 8 * 128 + 32 * 128 + 128 + 32 + 1);
  EXPECT_STREQ(tl_model_language_name(loaded, 0), "korean");

  double s1 = 0, s2 = 0;
  int l1 = 0, l2 = 0;
  ASSERT_EQ(tl_predict(model, patterns, "kamiro", &s1, &l1), TL_OK);
  ASSERT_EQ(tl_predict(loaded, patterns, "kamiro", &s2, &l2), TL_OK);
  EXPECT_EQ(s1, s2);
  EXPECT_EQ(l1, s1 > 0.5 ? 1 : 0);
  EXPECT_EQ(tl_predict(model, patterns, "Kamiro", &s1, &l1), TL_ERR_ARGUMENT);
  EXPECT_EQ(tl_predict(model, nullptr, "kamiro", &s1, &l1), TL_ERR_ARGUMENT);

  tl_eval_report report{};
  const auto roc = (dir / "roc.tsv").string();
  ASSERT_EQ(tl_evaluate(loaded, patterns, te, TL_MODE_PHONETIC, roc.c_str(), &report), TL_OK);
  EXPECT_EQ(report.total, tl_corpus_size(te));
  EXPECT_EQ(report.count_label0 + report.count_label1, report.total);
  EXPECT_EQ(testutil::read_tsv(roc).size(), report.roc_points);
  EXPECT_EQ(tl_evaluate(loaded, patterns, te, TL_MODE_CHARS, nullptr, &report), TL_ERR_MODE_MISMATCH);

  const uint32_t levels[] = {1, 3};
  tl_robustness_row rows[2];
  const auto sweep = (dir / "sweep.tsv").string();
  ASSERT_EQ(tl_robustness_sweep(loaded, patterns, te, levels, 2, 11, 0, sweep.c_str(), rows), TL_OK);
  EXPECT_EQ(rows[0].N, 1u);
  EXPECT_EQ(rows[1].N, 3u);
  EXPECT_EQ(testutil::read_tsv(sweep).size(), 3u);

  for (auto* c : {all, tr, va, te}) tl_corpus_free(c);
  tl_model_free(model);
  tl_model_free(loaded);
  tl_patterns_free(patterns);
}

TEST(CApi, CorpusBuilding) {
  tl_corpus* c = nullptr;
  ASSERT_EQ(tl_corpus_new(&c), TL_OK);
  EXPECT_EQ(tl_corpus_add_word(c, "ami", 1), TL_OK);
  EXPECT_EQ(tl_corpus_add_word(c, "ami", 2), TL_ERR_ARGUMENT);
  EXPECT_EQ(tl_corpus_add_word(c, "A1", 0), TL_ERR_ARGUMENT);
  const char* text = nullptr;
  int label = -1;
  ASSERT_EQ(tl_corpus_word(c, 0, &text, &label), TL_OK);
  EXPECT_STREQ(text, "ami");
  EXPECT_EQ(label, 1);
  EXPECT_EQ(tl_corpus_word(c, 1, &text, &label), TL_ERR_ARGUMENT);
  tl_corpus_free(c);
}

TEST(CApi, CorruptModelFile) {
  const auto dir = testutil::scratch("capi_corrupt");
  testutil::write_file(dir / "bad.bin", "TLIDMODL-not-a-model");
  tl_model* m = nullptr;
  EXPECT_EQ(tl_model_load((dir / "bad.bin").string().c_str(), &m), TL_ERR_CORRUPT);
  EXPECT_EQ(m, nullptr);
}
