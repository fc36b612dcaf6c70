#include "translid/translid.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <type_traits>

#include "translid/classifier.hpp"
#include "translid/corpus.hpp"
#include "translid/error.hpp"
#include "translid/evaluation.hpp"
#include "translid/rng.hpp"
#include "translid/robustness.hpp"
#include "translid/tokenizer.hpp"
#include "translid/training.hpp"

struct tl_patterns {
  translid::PatternSet set;
};

struct tl_corpus {
  translid::Corpus corpus;
};

struct tl_model {
  translid::TrainedModel model;
};

namespace {

using namespace translid;

thread_local std::string g_last_error;

tl_status fail(tl_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

tl_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return TL_ERR_ARGUMENT;
    case ErrorCode::kIo: return TL_ERR_IO;
    case ErrorCode::kData: return TL_ERR_DATA;
    case ErrorCode::kModeMismatch: return TL_ERR_MODE_MISMATCH;
    case ErrorCode::kCorrupt: return TL_ERR_CORRUPT;
    case ErrorCode::kNumeric: return TL_ERR_NUMERIC;
  }
  return TL_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
tl_status guarded(F&& body) {
  try {
    body();
    return TL_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TL_ERR_INTERNAL, e.what());
  }
}

tl_status copy_out(const std::string& s, char* buf, std::size_t cap, std::size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (buf == nullptr || cap < s.size() + 1)
    return fail(TL_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return TL_OK;
}

Label to_label(int label) {
  if (label != 0 && label != 1) throw Error(ErrorCode::kInvalidArgument, "label must be 0 or 1");
  return static_cast<Label>(label);
}

TokenizerMode to_mode(tl_mode mode) {
  if (mode != TL_MODE_PHONETIC && mode != TL_MODE_CHARS)
    throw Error(ErrorCode::kInvalidArgument, "unknown tokenizer mode");
  return static_cast<TokenizerMode>(mode);
}

std::string require_normalized(const char* word) {
  const auto w = normalize_word(word);
  if (!w || *w != word) throw Error(ErrorCode::kInvalidArgument, "word must match [a-z]+");
  return *w;
}

const PatternSet* set_of(const tl_patterns* p) { return p ? &p->set : nullptr; }

#define TL_REQUIRE(cond)                                                          \
  do {                                                                            \
    if (!(cond)) return fail(TL_ERR_ARGUMENT, "null or invalid argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* tl_version(void) { return "1.0.0"; }

const char* tl_last_error(void) { return g_last_error.c_str(); }

const char* tl_status_name(tl_status status) {
  switch (status) {
    case TL_OK: return "ok";
    case TL_ERR_ARGUMENT: return "invalid argument";
    case TL_ERR_IO: return "i/o error";
    case TL_ERR_DATA: return "data error";
    case TL_ERR_MODE_MISMATCH: return "mode mismatch";
    case TL_ERR_CORRUPT: return "corrupt model file";
    case TL_ERR_NUMERIC: return "numeric failure";
    case TL_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case TL_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

uint64_t tl_derive_seed(uint64_t seed, uint64_t stream) { return derive_seed(seed, stream); }

tl_status tl_normalize_word(const char* raw, char* buf, size_t cap, size_t* needed, int* accepted) {
  TL_REQUIRE(raw && accepted);
  const auto w = normalize_word(raw);
  *accepted = w ? 1 : 0;
  return copy_out(w.value_or(std::string()), buf, cap, needed);
}

tl_status tl_patterns_load(const char* path, tl_patterns** out) {
  TL_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] { *out = new tl_patterns{PatternSet::load(path)}; });
}

void tl_patterns_free(tl_patterns* patterns) { delete patterns; }

size_t tl_patterns_count(const tl_patterns* patterns) { return patterns ? patterns->set.size() : 0; }

tl_status tl_patterns_hyphenate(const tl_patterns* patterns, const char* word, char* buf, size_t cap,
                                size_t* needed) {
  TL_REQUIRE(patterns && word);
  std::string joined;
  const auto st = guarded([&] {
    const auto seq = tokenize_phonetic(word, patterns->set);
    for (std::size_t i = 0; i < seq.syllables.size(); ++i) {
      if (i) joined.push_back('-');
      joined += seq.syllables[i];
    }
  });
  if (st != TL_OK) return st;
  return copy_out(joined, buf, cap, needed);
}

tl_status tl_corpus_new(tl_corpus** out) {
  TL_REQUIRE(out);
  return guarded([&] { *out = new tl_corpus{}; });
}

tl_status tl_corpus_load(const char* path, int label, const char* name, tl_corpus** out,
                         size_t* rejected) {
  TL_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    auto result = load_corpus(path, to_label(label), name ? name : "");
    if (rejected) *rejected = result.rejected;
    *out = new tl_corpus{std::move(result.corpus)};
  });
}

tl_status tl_corpus_add_word(tl_corpus* corpus, const char* word, int label) {
  TL_REQUIRE(corpus && word);
  return guarded([&] {
    corpus->corpus.words.push_back({require_normalized(word), to_label(label)});
  });
}

tl_status tl_corpus_append(tl_corpus* dst, const tl_corpus* src) {
  TL_REQUIRE(dst && src);
  return guarded([&] { dst->corpus = concat(dst->corpus, src->corpus); });
}

tl_status tl_corpus_set_language_name(tl_corpus* corpus, int label, const char* name) {
  TL_REQUIRE(corpus && name);
  return guarded([&] { corpus->corpus.language_names[to_label(label)] = name; });
}

const char* tl_corpus_language_name(const tl_corpus* corpus, int label) {
  if (!corpus || (label != 0 && label != 1)) return nullptr;
  const auto it = corpus->corpus.language_names.find(static_cast<Label>(label));
  return it == corpus->corpus.language_names.end() ? nullptr : it->second.c_str();
}

size_t tl_corpus_size(const tl_corpus* corpus) { return corpus ? corpus->corpus.size() : 0; }

size_t tl_corpus_count(const tl_corpus* corpus, int label) {
  if (!corpus || (label != 0 && label != 1)) return 0;
  return corpus->corpus.count(static_cast<Label>(label));
}

tl_status tl_corpus_word(const tl_corpus* corpus, size_t index, const char** text, int* label) {
  TL_REQUIRE(corpus && text);
  if (index >= corpus->corpus.size()) return fail(TL_ERR_ARGUMENT, "word index out of range");
  const auto& w = corpus->corpus.words[index];
  *text = w.text.c_str();
  if (label) *label = w.label;
  return TL_OK;
}

tl_status tl_corpus_split(const tl_corpus* corpus, double train_fraction, double val_fraction,
                          uint64_t seed, tl_corpus** train, tl_corpus** val, tl_corpus** test) {
  TL_REQUIRE(corpus && train && val && test);
  *train = *val = *test = nullptr;
  return guarded([&] {
    auto parts = split(corpus->corpus, SplitSpec{train_fraction, val_fraction, seed});
    auto a = std::make_unique<tl_corpus>(tl_corpus{std::move(parts.train)});
    auto b = std::make_unique<tl_corpus>(tl_corpus{std::move(parts.val)});
    auto c = std::make_unique<tl_corpus>(tl_corpus{std::move(parts.test)});
    *train = a.release();
    *val = b.release();
    *test = c.release();
  });
}

tl_status tl_corpus_write(const tl_corpus* corpus, int label, const char* path) {
  TL_REQUIRE(corpus && path);
  return guarded([&] { write_corpus(corpus->corpus, to_label(label), path); });
}

void tl_corpus_free(tl_corpus* corpus) { delete corpus; }

namespace {

SyntheticLanguage to_language(const tl_synth_language& in) {
  SyntheticLanguage out;
  out.name = in.name ? in.name : "";
  if (in.syllable_count > 0 && in.syllables == nullptr)
    throw Error(ErrorCode::kInvalidArgument, "null syllable list");
  for (std::size_t i = 0; i < in.syllable_count; ++i) {
    if (in.syllables[i] == nullptr) throw Error(ErrorCode::kInvalidArgument, "null syllable");
    out.syllables.emplace_back(in.syllables[i]);
  }
  for (int k = 0; k < 4; ++k) out.length_weights[k] = in.length_weights[k];
  return out;
}

}  // namespace

tl_status tl_synth_generate(const tl_synth_language* lang1, const tl_synth_language* lang0,
                            size_t n_per_language, uint64_t seed, tl_corpus** out) {
  TL_REQUIRE(lang1 && lang0 && out);
  *out = nullptr;
  return guarded([&] {
    *out = new tl_corpus{
        generate_synthetic(to_language(*lang1), to_language(*lang0), n_per_language, seed)};
  });
}

tl_status tl_synth_generate_preset(const char* preset, size_t n_per_language, uint64_t seed,
                                   tl_corpus** out) {
  TL_REQUIRE(preset && out);
  *out = nullptr;
  return guarded([&] {
    const auto [first, second] = synthetic_preset(preset);
    *out = new tl_corpus{generate_synthetic(first, second, n_per_language, seed)};
  });
}

tl_status tl_stats_write(const tl_corpus* corpus, tl_mode mode, const tl_patterns* patterns,
                         const char* out_dir) {
  TL_REQUIRE(corpus && out_dir);
  return guarded([&] {
    const auto tokenizer = Tokenizer::make(to_mode(mode), set_of(patterns));
    write_stats(syllable_stats(corpus->corpus, tokenizer), corpus->corpus, out_dir);
  });
}

void tl_train_options_init(tl_train_options* options) {
  if (!options) return;
  const Hyperparams h;
  const TrainConfig c;
  options->mode = TL_MODE_PHONETIC;
  options->vocab_size = h.vocab_size;
  options->embed_dim = h.embed_dim;
  options->hidden_size = h.hidden_size;
  options->dropout_rate = h.dropout_rate;
  options->l2_lambda = h.l2_lambda;
  options->batch_size = c.batch_size;
  options->max_epochs = c.max_epochs;
  options->patience = c.patience;
  options->learning_rate = c.adam.learning_rate;
  options->beta1 = c.adam.beta1;
  options->beta2 = c.adam.beta2;
  options->epsilon = c.adam.epsilon;
  options->grad_clip = c.grad_clip;
  options->init_seed = h.seed;
  options->train_seed = c.seed;
}

tl_status tl_train(const tl_corpus* train_set, const tl_corpus* val_set, const tl_patterns* patterns,
                   const tl_train_options* options, const char* history_path, tl_model** out,
                   tl_train_summary* summary) {
  TL_REQUIRE(train_set && val_set && options && out);
  *out = nullptr;
  return guarded([&] {
    Hyperparams h;
    h.vocab_size = options->vocab_size;
    h.embed_dim = options->embed_dim;
    h.hidden_size = options->hidden_size;
    h.dropout_rate = options->dropout_rate;
    h.l2_lambda = options->l2_lambda;
    h.seed = options->init_seed;
    TrainConfig c;
    c.batch_size = options->batch_size;
    c.max_epochs = options->max_epochs;
    c.patience = options->patience;
    c.adam = {options->learning_rate, options->beta1, options->beta2, options->epsilon};
    c.grad_clip = options->grad_clip;
    c.seed = options->train_seed;

    auto result = train(train_set->corpus, val_set->corpus, to_mode(options->mode),
                        set_of(patterns), h, c);
    if (history_path) write_history(result.history, history_path);
    if (summary) {
      const auto& best = result.history.best();
      *summary = {result.history.epochs_run(), result.history.best_epoch, best.train_loss,
                  best.val_loss, best.val_accuracy};
    }
    *out = new tl_model{std::move(result.model)};
  });
}

tl_status tl_model_save(const tl_model* model, const char* path) {
  TL_REQUIRE(model && path);
  return guarded([&] { save_model(model->model, path); });
}

tl_status tl_model_load(const char* path, tl_model** out) {
  TL_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] { *out = new tl_model{load_model(path)}; });
}

void tl_model_free(tl_model* model) { delete model; }

tl_status tl_model_get_info(const tl_model* model, tl_model_info* info) {
  TL_REQUIRE(model && info);
  const auto& m = model->model;
  *info = {static_cast<tl_mode>(m.mode), m.hyper.vocab_size, m.hyper.embed_dim,
           m.hyper.hidden_size, m.params.size()};
  return TL_OK;
}

const char* tl_model_language_name(const tl_model* model, int label) {
  if (!model || (label != 0 && label != 1)) return nullptr;
  const auto it = model->model.language_names.find(static_cast<Label>(label));
  return it == model->model.language_names.end() ? nullptr : it->second.c_str();
}

tl_status tl_predict(const tl_model* model, const tl_patterns* patterns, const char* word,
                     double* score, int* label) {
  TL_REQUIRE(model && word && score);
  return guarded([&] {
    const Classifier classifier(model->model, set_of(patterns));
    const auto p = classifier.predict(require_normalized(word));
    *score = p.score;
    if (label) *label = p.label;
  });
}

tl_status tl_evaluate(const tl_model* model, const tl_patterns* patterns, const tl_corpus* test,
                      tl_mode requested, const char* roc_path, tl_eval_report* report) {
  TL_REQUIRE(model && test && report);
  return guarded([&] {
    const auto mode = to_mode(requested);
    require_mode(model->model, mode);
    const Classifier classifier(model->model, set_of(patterns));
    const auto r = evaluate(classifier, test->corpus, mode);
    if (roc_path) write_roc(r.roc, roc_path);
    auto get = [](const auto& map, Label l) {
      const auto it = map.find(l);
      return it == map.end() ? typename std::decay_t<decltype(map)>::mapped_type{} : it->second;
    };
    *report = {r.accuracy,
               r.auc,
               get(r.per_language_accuracy, 1),
               get(r.per_language_accuracy, 0),
               get(r.counts, 1),
               get(r.counts, 0),
               r.total,
               r.roc.size()};
  });
}

tl_status tl_robustness_sweep(const tl_model* model, const tl_patterns* patterns,
                              const tl_corpus* test, const uint32_t* levels, size_t level_count,
                              uint64_t seed, int per_language, const char* tsv_path,
                              tl_robustness_row* rows) {
  TL_REQUIRE(model && test && levels && level_count > 0 && rows);
  return guarded([&] {
    const Classifier classifier(model->model, set_of(patterns));
    SweepOptions options;
    options.Ns.assign(levels, levels + level_count);
    options.seed = seed;
    options.pooling = per_language ? UPooling::kPerLanguage : UPooling::kPooled;
    const auto report = sweep(classifier, test->corpus, options);
    if (tsv_path) write_sweep(report, tsv_path);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      const auto& r = report.rows[i];
      rows[i] = {r.N, r.sigma, r.cv, r.ratio, r.min_u, r.excluded, r.scored};
    }
  });
}

}  // extern "C"
