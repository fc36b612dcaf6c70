/*
 * translid: language identification for romanized words.
 *
 * C interface.  Every object is an opaque handle created by a *_load / *_new
 * / generating call and released with the matching *_free.  Functions return
 * a tl_status; on failure tl_last_error() describes the problem (the message
 * is thread-local and valid until the next failing call on that thread).
 *
 * Handles are immutable after creation except tl_corpus, which may be grown
 * with tl_corpus_add_word / tl_corpus_append.  Read-only calls on a handle
 * may run concurrently.
 */
#ifndef TRANSLID_H_
#define TRANSLID_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TL_API __declspec(dllexport)
#else
#define TL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tl_status {
  TL_OK = 0,
  TL_ERR_ARGUMENT = 1,
  TL_ERR_IO = 2,
  TL_ERR_DATA = 3,
  TL_ERR_MODE_MISMATCH = 4,
  TL_ERR_CORRUPT = 5,
  TL_ERR_NUMERIC = 6,
  TL_ERR_BUFFER_TOO_SMALL = 7,
  TL_ERR_INTERNAL = 8
} tl_status;

typedef enum tl_mode { TL_MODE_PHONETIC = 0, TL_MODE_CHARS = 1 } tl_mode;

typedef struct tl_patterns tl_patterns;
typedef struct tl_corpus tl_corpus;
typedef struct tl_model tl_model;

TL_API const char* tl_version(void);
TL_API const char* tl_last_error(void);
TL_API const char* tl_status_name(tl_status status);

/* Independent stream seed for (seed, stream); lets one user-facing seed
 * drive splitting, initialization and batch order separately. */
TL_API uint64_t tl_derive_seed(uint64_t seed, uint64_t stream);

/* String outputs are copied into (buf, cap) NUL-terminated; *needed (if
 * non-NULL) receives the required capacity including the NUL.  A short buffer
 * yields TL_ERR_BUFFER_TOO_SMALL. */

/* Lowercases and keeps only a-z.  *accepted is 0 when nothing survives. */
TL_API tl_status tl_normalize_word(const char* raw, char* buf, size_t cap, size_t* needed,
                                   int* accepted);

/* ---- hyphenation patterns ---------------------------------------------- */

TL_API tl_status tl_patterns_load(const char* path, tl_patterns** out);
TL_API void tl_patterns_free(tl_patterns* patterns);
TL_API size_t tl_patterns_count(const tl_patterns* patterns);
/* Writes the word with '-' at every break, e.g. "gi-ta". */
TL_API tl_status tl_patterns_hyphenate(const tl_patterns* patterns, const char* word, char* buf,
                                       size_t cap, size_t* needed);

/* ---- corpora ------------------------------------------------------------ */

TL_API tl_status tl_corpus_new(tl_corpus** out);
/* Whitespace-separated tokens, each normalized; name NULL = file stem. */
TL_API tl_status tl_corpus_load(const char* path, int label, const char* name, tl_corpus** out,
                                size_t* rejected);
TL_API tl_status tl_corpus_add_word(tl_corpus* corpus, const char* word, int label);
TL_API tl_status tl_corpus_append(tl_corpus* dst, const tl_corpus* src);
TL_API tl_status tl_corpus_set_language_name(tl_corpus* corpus, int label, const char* name);
TL_API const char* tl_corpus_language_name(const tl_corpus* corpus, int label);
TL_API size_t tl_corpus_size(const tl_corpus* corpus);
TL_API size_t tl_corpus_count(const tl_corpus* corpus, int label);
/* *text stays valid until the corpus is modified or freed. */
TL_API tl_status tl_corpus_word(const tl_corpus* corpus, size_t index, const char** text,
                                int* label);
TL_API tl_status tl_corpus_split(const tl_corpus* corpus, double train_fraction,
                                 double val_fraction, uint64_t seed, tl_corpus** train,
                                 tl_corpus** val, tl_corpus** test);
/* Words with `label`, one per line. */
TL_API tl_status tl_corpus_write(const tl_corpus* corpus, int label, const char* path);
TL_API void tl_corpus_free(tl_corpus* corpus);

typedef struct tl_synth_language {
  const char* name;
  const char* const* syllables;
  size_t syllable_count;
  double length_weights[4]; /* words of 1..4 syllables */
} tl_synth_language;

TL_API tl_status tl_synth_generate(const tl_synth_language* lang1, const tl_synth_language* lang0,
                                   size_t n_per_language, uint64_t seed, tl_corpus** out);
/* preset: "demo" or "hard". */
TL_API tl_status tl_synth_generate_preset(const char* preset, size_t n_per_language,
                                          uint64_t seed, tl_corpus** out);

/* Writes syllables_per_word.<name>.tsv and syllable_length.<name>.tsv per
 * label.  patterns may be NULL in TL_MODE_CHARS. */
TL_API tl_status tl_stats_write(const tl_corpus* corpus, tl_mode mode,
                                const tl_patterns* patterns, const char* out_dir);

/* ---- training ----------------------------------------------------------- */

typedef struct tl_train_options {
  tl_mode mode;
  uint32_t vocab_size; /* phonetic mode; chars mode always uses 26 */
  uint32_t embed_dim;
  uint32_t hidden_size;
  double dropout_rate;
  double l2_lambda;
  uint32_t batch_size;
  uint32_t max_epochs;
  uint32_t patience;
  double learning_rate;
  double beta1;
  double beta2;
  double epsilon;
  double grad_clip;
  uint64_t init_seed;  /* parameter initialization */
  uint64_t train_seed; /* batch order and dropout */
} tl_train_options;

typedef struct tl_train_summary {
  uint32_t epochs_run;
  uint32_t best_epoch;
  double best_train_loss;
  double best_val_loss;
  double best_val_accuracy;
} tl_train_summary;

TL_API void tl_train_options_init(tl_train_options* options);

/* history_path may be NULL; otherwise the per-epoch TSV is written there. */
TL_API tl_status tl_train(const tl_corpus* train, const tl_corpus* val,
                          const tl_patterns* patterns, const tl_train_options* options,
                          const char* history_path, tl_model** out, tl_train_summary* summary);

/* ---- models ------------------------------------------------------------- */

typedef struct tl_model_info {
  tl_mode mode;
  uint32_t vocab_size;
  uint32_t embed_dim;
  uint32_t hidden_size;
  size_t parameter_count;
} tl_model_info;

TL_API tl_status tl_model_save(const tl_model* model, const char* path);
TL_API tl_status tl_model_load(const char* path, tl_model** out);
TL_API void tl_model_free(tl_model* model);
TL_API tl_status tl_model_get_info(const tl_model* model, tl_model_info* info);
TL_API const char* tl_model_language_name(const tl_model* model, int label);

/* word must already be normalized ([a-z]+).  label = 1 iff score > 0.5. */
TL_API tl_status tl_predict(const tl_model* model, const tl_patterns* patterns, const char* word,
                            double* score, int* label);

typedef struct tl_eval_report {
  double accuracy;
  double auc;
  double accuracy_label1;
  double accuracy_label0;
  size_t count_label1;
  size_t count_label0;
  size_t total;
  size_t roc_points;
} tl_eval_report;

/* Fails with TL_ERR_MODE_MISMATCH if `requested` differs from the model's
 * mode.  roc_path may be NULL. */
TL_API tl_status tl_evaluate(const tl_model* model, const tl_patterns* patterns,
                             const tl_corpus* test, tl_mode requested, const char* roc_path,
                             tl_eval_report* report);

/* ---- spelling-perturbation robustness ----------------------------------- */

typedef struct tl_robustness_row {
  uint32_t N;
  double sigma;
  double cv;
  double ratio;
  double min_u;
  size_t excluded;
  size_t scored;
} tl_robustness_row;

/* rows must hold level_count entries.  per_language != 0 takes min U as the
 * minimum over the two languages instead of the pooled value.  tsv_path may
 * be NULL. */
TL_API tl_status tl_robustness_sweep(const tl_model* model, const tl_patterns* patterns,
                                     const tl_corpus* test, const uint32_t* levels,
                                     size_t level_count, uint64_t seed, int per_language,
                                     const char* tsv_path, tl_robustness_row* rows);

#ifdef __cplusplus
}
#endif

#endif /* TRANSLID_H_ */
