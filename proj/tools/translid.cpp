// translid command-line tool.  Everything goes through the C interface in
// translid/translid.h.

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "translid/translid.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

// Thrown to unwind with a specific exit code after reporting.
struct Failure {
  int exit_code;
};

int exit_code_for(tl_status st) {
  switch (st) {
    case TL_OK: return kOk;
    case TL_ERR_ARGUMENT: return kUsage;
    case TL_ERR_NUMERIC: return kNumeric;
    default: return kData;
  }
}

void check(tl_status st, const std::string& context) {
  if (st == TL_OK) return;
  std::cerr << "error: " << context << ": " << tl_last_error() << " (" << tl_status_name(st)
            << ")\n";
  throw Failure{exit_code_for(st)};
}

[[noreturn]] void usage_error(const std::string& message) {
  std::cerr << "usage error: " << message << "\n";
  throw Failure{kUsage};
}

std::string num(double v) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

struct PatternsDeleter {
  void operator()(tl_patterns* p) const { tl_patterns_free(p); }
};
struct CorpusDeleter {
  void operator()(tl_corpus* p) const { tl_corpus_free(p); }
};
struct ModelDeleter {
  void operator()(tl_model* p) const { tl_model_free(p); }
};
using PatternsPtr = std::unique_ptr<tl_patterns, PatternsDeleter>;
using CorpusPtr = std::unique_ptr<tl_corpus, CorpusDeleter>;
using ModelPtr = std::unique_ptr<tl_model, ModelDeleter>;

tl_mode parse_mode(const std::string& s) {
  if (s == "phonetic") return TL_MODE_PHONETIC;
  if (s == "chars") return TL_MODE_CHARS;
  usage_error("--mode must be 'phonetic' or 'chars'");
}

const char* mode_name(tl_mode m) { return m == TL_MODE_PHONETIC ? "phonetic" : "chars"; }

PatternsPtr load_patterns(const std::string& path) {
  tl_patterns* p = nullptr;
  check(tl_patterns_load(path.c_str(), &p), "loading patterns " + path);
  return PatternsPtr(p);
}

PatternsPtr load_patterns_for(tl_mode mode, const std::string& path) {
  if (mode == TL_MODE_CHARS) return nullptr;
  if (path.empty()) usage_error("--patterns is required in phonetic mode");
  if (!fs::exists(path)) usage_error("pattern file not found: " + path);
  return load_patterns(path);
}

ModelPtr load_model(const std::string& path) {
  tl_model* m = nullptr;
  check(tl_model_load(path.c_str(), &m), "loading model " + path);
  return ModelPtr(m);
}

tl_model_info info_of(const tl_model* m) {
  tl_model_info info{};
  check(tl_model_get_info(m, &info), "model info");
  return info;
}

// Loads the label-1 and label-0 corpora into one corpus.
CorpusPtr load_pair(const std::string& lang1, const std::string& name1, const std::string& lang0,
                    const std::string& name0) {
  tl_corpus* a = nullptr;
  tl_corpus* b = nullptr;
  size_t rejected1 = 0, rejected0 = 0;
  check(tl_corpus_load(lang1.c_str(), 1, name1.empty() ? nullptr : name1.c_str(), &a, &rejected1),
        "loading " + lang1);
  CorpusPtr first(a);
  check(tl_corpus_load(lang0.c_str(), 0, name0.empty() ? nullptr : name0.c_str(), &b, &rejected0),
        "loading " + lang0);
  CorpusPtr second(b);
  if (rejected1 + rejected0 > 0)
    std::cerr << "note: skipped " << rejected1 << " + " << rejected0
              << " tokens with no latin letters\n";
  check(tl_corpus_append(first.get(), second.get()), "merging corpora");
  return first;
}

// Creates the directory that will hold `file`, if any.
void ensure_parent(const std::string& file) {
  const auto dir = fs::path(file).parent_path();
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create directory " << dir << ": " << ec.message() << "\n";
    throw Failure{kData};
  }
}

std::string language_name(const tl_model* m, int label) {
  const char* n = tl_model_language_name(m, label);
  return n ? n : "lang" + std::to_string(label);
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string lang1, lang0, name1, name0, patterns, out, history;
  std::string mode = "phonetic";
  std::uint64_t seed = 0;
  double train_fraction = 0.9, val_fraction = 0.1;
  tl_train_options opt{};
};

void add_train(CLI::App& app, TrainArgs& a) {
  tl_train_options_init(&a.opt);
  auto* c = app.add_subcommand("train", "Train a classifier on two corpora");
  c->add_option("--lang1", a.lang1, "Corpus for label 1")->required();
  c->add_option("--lang0", a.lang0, "Corpus for label 0")->required();
  c->add_option("--name1", a.name1, "Display name for label 1 (default: file stem)");
  c->add_option("--name0", a.name0, "Display name for label 0 (default: file stem)");
  c->add_option("--mode", a.mode, "phonetic | chars")->capture_default_str();
  c->add_option("--patterns", a.patterns, "Hyphenation pattern file (phonetic mode)");
  c->add_option("--out", a.out, "Model file to write")->required();
  c->add_option("--history", a.history, "History TSV (default: history.tsv next to --out)");
  c->add_option("--seed", a.seed, "Seed for split, initialization and batch order")->capture_default_str();
  c->add_option("--train-fraction", a.train_fraction)->capture_default_str();
  c->add_option("--val-fraction", a.val_fraction)->capture_default_str();
  c->add_option("--vocab-size", a.opt.vocab_size, "Hash buckets for syllables")->capture_default_str();
  c->add_option("--embed-dim", a.opt.embed_dim)->capture_default_str();
  c->add_option("--hidden-size", a.opt.hidden_size)->capture_default_str();
  c->add_option("--dropout", a.opt.dropout_rate)->capture_default_str();
  c->add_option("--l2", a.opt.l2_lambda)->capture_default_str();
  c->add_option("--batch-size", a.opt.batch_size)->capture_default_str();
  c->add_option("--max-epochs", a.opt.max_epochs)->capture_default_str();
  c->add_option("--patience", a.opt.patience)->capture_default_str();
  c->add_option("--learning-rate", a.opt.learning_rate)->capture_default_str();
  c->add_option("--beta1", a.opt.beta1)->capture_default_str();
  c->add_option("--beta2", a.opt.beta2)->capture_default_str();
  c->add_option("--epsilon", a.opt.epsilon)->capture_default_str();
  c->add_option("--grad-clip", a.opt.grad_clip)->capture_default_str();
}

int run_train(TrainArgs& a) {
  a.opt.mode = parse_mode(a.mode);
  auto patterns = load_patterns_for(a.opt.mode, a.patterns);
  auto corpus = load_pair(a.lang1, a.name1, a.lang0, a.name0);

  tl_corpus *tr = nullptr, *va = nullptr, *te = nullptr;
  check(tl_corpus_split(corpus.get(), a.train_fraction, a.val_fraction, tl_derive_seed(a.seed, 0),
                        &tr, &va, &te),
        "splitting");
  CorpusPtr train(tr), val(va), rest(te);

  a.opt.init_seed = tl_derive_seed(a.seed, 1);
  a.opt.train_seed = tl_derive_seed(a.seed, 2);
  if (a.history.empty()) a.history = (fs::path(a.out).parent_path() / "history.tsv").string();
  ensure_parent(a.out);
  ensure_parent(a.history);

  tl_model* m = nullptr;
  tl_train_summary summary{};
  check(tl_train(train.get(), val.get(), patterns.get(), &a.opt, a.history.c_str(), &m, &summary),
        "training");
  ModelPtr model(m);
  check(tl_model_save(model.get(), a.out.c_str()), "saving model");

  std::cout << "train words: " << tl_corpus_size(train.get())
            << "\nvalidation words: " << tl_corpus_size(val.get())
            << "\nepochs run: " << summary.epochs_run << "\nbest epoch: " << summary.best_epoch
            << "\nbest train loss: " << num(summary.best_train_loss)
            << "\nbest validation loss: " << num(summary.best_val_loss)
            << "\nbest validation accuracy: " << num(summary.best_val_accuracy)
            << "\nmodel: " << a.out << "\nhistory: " << a.history << "\n";
  return kOk;
}

// ---------------------------------------------------------------- evaluate

struct EvalArgs {
  std::string model, lang1, lang0, name1, name0, patterns, mode, roc = "roc.tsv", compare;
};

void add_evaluate(CLI::App& app, EvalArgs& a) {
  auto* c = app.add_subcommand("evaluate", "Accuracy, ROC and AUC on test corpora");
  c->add_option("--model", a.model)->required();
  c->add_option("--lang1", a.lang1, "Test corpus for label 1")->required();
  c->add_option("--lang0", a.lang0, "Test corpus for label 0")->required();
  c->add_option("--name1", a.name1);
  c->add_option("--name0", a.name0);
  c->add_option("--mode", a.mode, "Expected model mode (phonetic | chars)");
  c->add_option("--patterns", a.patterns);
  c->add_option("--roc", a.roc, "ROC output (fpr<TAB>tpr)")->capture_default_str();
  c->add_option("--compare", a.compare, "Second (baseline) model for a side-by-side table");
}

tl_eval_report evaluate_one(const tl_model* model, const std::string& patterns_path,
                            const tl_corpus* test, tl_mode mode, const std::string& roc) {
  auto patterns = load_patterns_for(mode, patterns_path);
  tl_eval_report r{};
  check(tl_evaluate(model, patterns.get(), test, mode, roc.empty() ? nullptr : roc.c_str(), &r),
        "evaluating");
  return r;
}

void print_report(const std::string& path, const tl_model* model, tl_mode mode,
                  const tl_eval_report& r, const std::string& roc) {
  std::cout << "model: " << path << "\nmode: " << mode_name(mode) << "\nwords: " << r.total
            << "\naccuracy: " << num(r.accuracy) << "\nauc: " << num(r.auc) << "\naccuracy["
            << language_name(model, 1) << "]: " << num(r.accuracy_label1)
            << " (n=" << r.count_label1 << ")\naccuracy[" << language_name(model, 0)
            << "]: " << num(r.accuracy_label0) << " (n=" << r.count_label0 << ")\n";
  if (!roc.empty()) std::cout << "roc: " << roc << " (" << r.roc_points << " points)\n";
}

int run_evaluate(const EvalArgs& a) {
  auto model = load_model(a.model);
  const auto info = info_of(model.get());
  const tl_mode mode = a.mode.empty() ? info.mode : parse_mode(a.mode);
  if (mode != info.mode) {
    std::cerr << "error: mode mismatch: model " << a.model << " was trained in "
              << mode_name(info.mode) << " mode, --mode " << a.mode << " requested\n";
    return kData;
  }
  auto test = load_pair(a.lang1, a.name1, a.lang0, a.name0);
  ensure_parent(a.roc);
  const auto report = evaluate_one(model.get(), a.patterns, test.get(), mode, a.roc);
  print_report(a.model, model.get(), mode, report, a.roc);

  if (!a.compare.empty()) {
    auto other = load_model(a.compare);
    const auto other_mode = info_of(other.get()).mode;
    const auto other_report = evaluate_one(other.get(), a.patterns, test.get(), other_mode, "");
    auto row_name = [](tl_mode m) {
      return m == TL_MODE_PHONETIC ? "Phonetic syllables" : "Letters (baseline)";
    };
    std::cout << "\nModel\tAccuracy\tAUC\n"
              << row_name(mode) << '\t' << num(report.accuracy) << '\t' << num(report.auc) << '\n'
              << row_name(other_mode) << '\t' << num(other_report.accuracy) << '\t'
              << num(other_report.auc) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- predict

struct PredictArgs {
  std::string model, patterns;
  std::vector<std::string> words;
};

void add_predict(CLI::App& app, PredictArgs& a) {
  auto* c = app.add_subcommand("predict", "Score words given as arguments or on stdin");
  c->add_option("--model", a.model)->required();
  c->add_option("--patterns", a.patterns);
  c->add_option("words", a.words, "Words to classify (default: read stdin)");
}

int run_predict(const PredictArgs& a) {
  auto model = load_model(a.model);
  const auto info = info_of(model.get());
  auto patterns = load_patterns_for(info.mode, a.patterns);
  const std::string names[2] = {language_name(model.get(), 0), language_name(model.get(), 1)};

  std::string out;
  auto handle = [&](const std::string& raw) {
    std::vector<char> buf(raw.size() + 1);
    size_t needed = 0;
    int accepted = 0;
    check(tl_normalize_word(raw.c_str(), buf.data(), buf.size(), &needed, &accepted), "normalizing");
    if (!accepted) {
      out += raw + "\tSKIP\n";
      return;
    }
    double score = 0;
    int label = 0;
    check(tl_predict(model.get(), patterns.get(), buf.data(), &score, &label), "predicting " + raw);
    out += std::string(buf.data()) + '\t' + num(score) + '\t' + names[label] + '\n';
  };

  if (!a.words.empty()) {
    for (const auto& w : a.words) handle(w);
  } else {
    std::string token;
    while (std::cin >> token) handle(token);
  }
  std::cout << out;
  return kOk;
}

// ---------------------------------------------------------------- robustness

struct RobustArgs {
  std::string model, lang1, lang0, name1, name0, patterns, out = "sweep.tsv";
  std::vector<std::uint32_t> levels{1, 2, 3, 4, 5};
  std::uint64_t seed = 0;
  bool per_language = false;
};

void add_robustness(CLI::App& app, RobustArgs& a) {
  auto* c = app.add_subcommand("robustness", "Vowel-repetition perturbation sweep");
  c->add_option("--model", a.model)->required();
  c->add_option("--lang1", a.lang1)->required();
  c->add_option("--lang0", a.lang0)->required();
  c->add_option("--name1", a.name1);
  c->add_option("--name0", a.name0);
  c->add_option("--patterns", a.patterns);
  c->add_option("--N-list", a.levels, "Comma-separated perturbation levels")
      ->delimiter(',')
      ->capture_default_str();
  c->add_option("--seed", a.seed)->capture_default_str();
  c->add_option("--out", a.out, "Sweep TSV")->capture_default_str();
  c->add_flag("--per-language", a.per_language, "min U as the minimum over the two languages");
}

int run_robustness(RobustArgs& a) {
  std::vector<std::uint32_t> levels = a.levels;
  std::sort(levels.begin(), levels.end());
  const auto before = levels.size();
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.size() != before) std::cerr << "warning: duplicate N values removed\n";

  auto model = load_model(a.model);
  auto patterns = load_patterns_for(info_of(model.get()).mode, a.patterns);
  auto test = load_pair(a.lang1, a.name1, a.lang0, a.name0);
  ensure_parent(a.out);
  std::vector<tl_robustness_row> rows(levels.size());
  check(tl_robustness_sweep(model.get(), patterns.get(), test.get(), levels.data(), levels.size(),
                            a.seed, a.per_language ? 1 : 0, a.out.c_str(), rows.data()),
        "robustness sweep");
  for (const auto& r : rows) {
    std::cout << "N = " << r.N;
    if (r.N == 0) std::cout << "  (degenerate endpoint: every vowel deleted)";
    std::cout << "\n  Coefficient of variation (CV_correctscore)        " << num(r.cv)
              << "\n  Fractional variation std.dev (sigma_correctscore) " << num(r.sigma)
              << "\n  sigma_correctscore / CV_correctscore              " << num(r.ratio)
              << "\n  min. U                                            " << num(r.min_u)
              << "\n  scored / excluded                                 " << r.scored << " / "
              << r.excluded << "\n";
  }
  std::cout << "sweep: " << a.out << "\n";
  return kOk;
}

// ---------------------------------------------------------------- stats / synth

struct StatsArgs {
  std::string lang1, lang0, name1, name0, patterns, mode = "phonetic", out_dir = ".";
};

void add_stats(CLI::App& app, StatsArgs& a) {
  auto* c = app.add_subcommand("stats", "Syllables-per-word and syllable-length histograms");
  c->add_option("--lang1", a.lang1, "Corpus for label 1");
  c->add_option("--lang0", a.lang0, "Corpus for label 0");
  c->add_option("--name1", a.name1);
  c->add_option("--name0", a.name0);
  c->add_option("--mode", a.mode)->capture_default_str();
  c->add_option("--patterns", a.patterns);
  c->add_option("--out-dir", a.out_dir)->capture_default_str();
}

int run_stats(const StatsArgs& a) {
  if (a.lang1.empty() && a.lang0.empty()) usage_error("stats needs --lang1 and/or --lang0");
  const auto mode = parse_mode(a.mode);
  auto patterns = load_patterns_for(mode, a.patterns);
  tl_corpus* c = nullptr;
  check(tl_corpus_new(&c), "allocating corpus");
  CorpusPtr corpus(c);
  for (auto [path, name, label] : {std::tuple{a.lang1, a.name1, 1}, std::tuple{a.lang0, a.name0, 0}}) {
    if (path.empty()) continue;
    tl_corpus* part = nullptr;
    check(tl_corpus_load(path.c_str(), label, name.empty() ? nullptr : name.c_str(), &part, nullptr),
          "loading " + path);
    CorpusPtr owned(part);
    check(tl_corpus_append(corpus.get(), owned.get()), "merging corpora");
  }
  check(tl_stats_write(corpus.get(), mode, patterns.get(), a.out_dir.c_str()), "writing stats");
  std::cout << "histograms written to " << a.out_dir << "\n";
  return kOk;
}

struct SynthArgs {
  std::string preset = "demo", out_dir = ".", name1, name0;
  std::vector<std::string> inventory1, inventory0;
  std::vector<double> weights1{0.25, 0.4, 0.25, 0.1}, weights0{0.25, 0.4, 0.25, 0.1};
  std::size_t n = 1000;
  std::uint64_t seed = 0;
};

void add_synth(CLI::App& app, SynthArgs& a) {
  auto* c = app.add_subcommand("synth", "Generate a synthetic two-language corpus");
  c->add_option("--preset", a.preset, "demo | hard (ignored with --inventory1/0)")->capture_default_str();
  c->add_option("--inventory1", a.inventory1, "Comma-separated syllables for label 1")->delimiter(',');
  c->add_option("--inventory0", a.inventory0, "Comma-separated syllables for label 0")->delimiter(',');
  c->add_option("--weights1", a.weights1, "Weights for 1..4 syllables per word")->delimiter(',')->expected(4);
  c->add_option("--weights0", a.weights0)->delimiter(',')->expected(4);
  c->add_option("--name1", a.name1);
  c->add_option("--name0", a.name0);
  c->add_option("-n,--n", a.n, "Words per language")->capture_default_str();
  c->add_option("--seed", a.seed)->capture_default_str();
  c->add_option("--out-dir", a.out_dir)->capture_default_str();
}

int run_synth(const SynthArgs& a) {
  tl_corpus* c = nullptr;
  if (!a.inventory1.empty() || !a.inventory0.empty()) {
    if (a.inventory1.empty() || a.inventory0.empty())
      usage_error("--inventory1 and --inventory0 must be given together");
    std::vector<const char*> s1, s0;
    for (const auto& s : a.inventory1) s1.push_back(s.c_str());
    for (const auto& s : a.inventory0) s0.push_back(s.c_str());
    const std::string n1 = a.name1.empty() ? "lang1" : a.name1;
    const std::string n0 = a.name0.empty() ? "lang0" : a.name0;
    tl_synth_language l1{n1.c_str(), s1.data(), s1.size(), {}};
    tl_synth_language l0{n0.c_str(), s0.data(), s0.size(), {}};
    for (int k = 0; k < 4; ++k) {
      l1.length_weights[k] = a.weights1[k];
      l0.length_weights[k] = a.weights0[k];
    }
    check(tl_synth_generate(&l1, &l0, a.n, a.seed, &c), "generating corpus");
  } else {
    check(tl_synth_generate_preset(a.preset.c_str(), a.n, a.seed, &c), "generating corpus");
  }
  CorpusPtr corpus(c);
  if (!a.name1.empty()) check(tl_corpus_set_language_name(c, 1, a.name1.c_str()), "naming");
  if (!a.name0.empty()) check(tl_corpus_set_language_name(c, 0, a.name0.c_str()), "naming");
  fs::create_directories(a.out_dir);
  for (int label : {1, 0}) {
    const fs::path path = fs::path(a.out_dir) / (std::string(tl_corpus_language_name(c, label)) + ".txt");
    check(tl_corpus_write(c, label, path.string().c_str()), "writing " + path.string());
    std::cout << path.string() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- config

// `key = value` lines; '#' or ';' start comments.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage_error("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find_first_of("#;")));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      usage_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

// Returns argv with config-file settings inserted for every option the
// command line does not already set.
std::vector<std::string> apply_config(CLI::App& app, std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty() || args.size() < 2) return args;

  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args[1]);
  } catch (const CLI::OptionNotFound&) {
    usage_error("--config must follow a subcommand");
  }
  for (const auto& [key, value] : read_config(config_path)) {
    const std::string flag = "--" + key;
    auto* opt = sub->get_option_no_throw(flag);
    if (opt == nullptr || key == "config") usage_error("unknown config key '" + key + "'");
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& s) {
      return s == flag || s.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes") args.push_back(flag);
    } else {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Language identification for romanized words"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tl_version()));

  TrainArgs train_args;
  EvalArgs eval_args;
  PredictArgs predict_args;
  RobustArgs robust_args;
  StatsArgs stats_args;
  SynthArgs synth_args;
  add_train(app, train_args);
  add_evaluate(app, eval_args);
  add_predict(app, predict_args);
  add_robustness(app, robust_args);
  add_stats(app, stats_args);
  add_synth(app, synth_args);
  std::string ignored_config;
  for (auto* sub : app.get_subcommands({}))
    sub->add_option("--config", ignored_config, "key = value defaults; flags override");

  try {
    auto args = apply_config(app, std::vector<std::string>(argv, argv + argc));
    std::vector<char*> ptrs;
    for (auto& s : args) ptrs.push_back(s.data());
    try {
      app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e);
      return rc == 0 ? kOk : kUsage;
    }

    if (app.got_subcommand("train")) return run_train(train_args);
    if (app.got_subcommand("evaluate")) return run_evaluate(eval_args);
    if (app.got_subcommand("predict")) return run_predict(predict_args);
    if (app.got_subcommand("robustness")) return run_robustness(robust_args);
    if (app.got_subcommand("stats")) return run_stats(stats_args);
    if (app.got_subcommand("synth")) return run_synth(synth_args);
  } catch (const Failure& f) {
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
