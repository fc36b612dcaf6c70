#include "translid/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "translid/error.hpp"
#include "translid/rng.hpp"

namespace translid {

std::size_t Corpus::count(Label label) const {
  return static_cast<std::size_t>(
      std::count_if(words.begin(), words.end(), [&](const auto& w) { return w.label == label; }));
}

std::string Corpus::language_name(Label label) const {
  if (auto it = language_names.find(label); it != language_names.end() && !it->second.empty())
    return it->second;
  return "lang" + std::to_string(label);
}

std::optional<std::string> normalize_word(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c >= 'A' && c <= 'Z') out.push_back(static_cast<char>(c - 'A' + 'a'));
    else if (c >= 'a' && c <= 'z') out.push_back(c);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

namespace {

void append_tokens(std::string_view text, Label label, LoadResult& result) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto start = text.find_first_not_of(" \t\r\n\f\v", pos);
    if (start == std::string_view::npos) break;
    auto end = text.find_first_of(" \t\r\n\f\v", start);
    if (end == std::string_view::npos) end = text.size();
    if (auto w = normalize_word(text.substr(start, end - start)))
      result.corpus.words.push_back({std::move(*w), label});
    else
      ++result.rejected;
    pos = end;
  }
}

}  // namespace

Corpus parse_corpus(std::string_view text, Label label, std::string language_name) {
  if (label > 1) throw Error(ErrorCode::kInvalidArgument, "label must be 0 or 1");
  LoadResult result;
  result.corpus.language_names[label] = std::move(language_name);
  append_tokens(text, label, result);
  return std::move(result.corpus);
}

LoadResult load_corpus(const std::filesystem::path& path, Label label,
                       std::string language_name) {
  if (label > 1) throw Error(ErrorCode::kInvalidArgument, "label must be 0 or 1");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (language_name.empty()) language_name = path.stem().string();

  LoadResult result;
  result.corpus.language_names[label] = std::move(language_name);
  append_tokens(buf.str(), label, result);
  if (result.corpus.empty())
    throw Error(ErrorCode::kData, "zero surviving words in " + path.string());
  return result;
}

Corpus concat(const Corpus& a, const Corpus& b) {
  Corpus out = a;
  out.words.insert(out.words.end(), b.words.begin(), b.words.end());
  for (const auto& [label, name] : b.language_names)
    if (!out.language_names.contains(label) || out.language_names[label].empty())
      out.language_names[label] = name;
  return out;
}

void write_corpus(const Corpus& corpus, Label label, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto& w : corpus.words)
    if (w.label == label) out << w.text << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

namespace {

// Distributes `total` items over groups in proportion to `quota` (largest
// remainder, ties to the lower index) without exceeding `capacity`.
std::vector<std::size_t> allocate(std::size_t total, const std::vector<double>& quota,
                                  const std::vector<std::size_t>& capacity) {
  std::vector<std::size_t> out(quota.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < quota.size(); ++i) {
    out[i] = std::min(capacity[i], static_cast<std::size_t>(quota[i]));
    assigned += out[i];
  }
  std::vector<std::size_t> order(quota.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return quota[a] - static_cast<double>(out[a]) > quota[b] - static_cast<double>(out[b]);
  });
  while (assigned < total) {
    bool progressed = false;
    for (auto i : order) {
      if (assigned == total) break;
      if (out[i] < capacity[i]) {
        ++out[i];
        ++assigned;
        progressed = true;
      }
    }
    if (!progressed) break;
  }
  return out;
}

}  // namespace

Split split(const Corpus& corpus, const SplitSpec& spec) {
  const auto in_unit = [](double f) { return f >= 0.0 && f <= 1.0; };
  if (!in_unit(spec.train_fraction) || !in_unit(spec.val_fraction) ||
      spec.train_fraction + spec.val_fraction > 1.0 + 1e-9)
    throw Error(ErrorCode::kInvalidArgument,
                "split fractions must lie in [0, 1] and sum to at most 1");
  if (corpus.empty()) throw Error(ErrorCode::kData, "cannot split an empty corpus");

  const std::size_t n = corpus.size();
  const auto n_train = std::min(n, static_cast<std::size_t>(std::llround(spec.train_fraction * n)));
  std::size_t n_val = n - n_train;
  if (spec.train_fraction + spec.val_fraction < 1.0 - 1e-9)
    n_val = std::min(n_val, static_cast<std::size_t>(std::llround(spec.val_fraction * n)));

  Rng rng(spec.seed);
  std::vector<std::vector<std::size_t>> by_label(2);
  for (std::size_t i = 0; i < n; ++i) by_label[corpus.words[i].label].push_back(i);
  for (auto& idx : by_label) rng.shuffle(std::span(idx));

  std::vector<std::size_t> sizes{by_label[0].size(), by_label[1].size()};
  std::vector<double> train_quota, val_quota;
  for (auto s : sizes) train_quota.push_back(spec.train_fraction * static_cast<double>(s));
  const auto train_alloc = allocate(n_train, train_quota, sizes);
  std::vector<std::size_t> remaining{sizes[0] - train_alloc[0], sizes[1] - train_alloc[1]};
  for (auto s : sizes) val_quota.push_back(spec.val_fraction * static_cast<double>(s));
  const auto val_alloc = allocate(n_val, val_quota, remaining);

  Split out;
  for (auto* part : {&out.train, &out.val, &out.test}) part->language_names = corpus.language_names;
  std::vector<std::size_t> train_idx, val_idx, test_idx;
  for (std::size_t label = 0; label < 2; ++label) {
    const auto& idx = by_label[label];
    const auto a = train_alloc[label];
    const auto b = a + val_alloc[label];
    train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + a);
    val_idx.insert(val_idx.end(), idx.begin() + a, idx.begin() + b);
    test_idx.insert(test_idx.end(), idx.begin() + b, idx.end());
  }
  for (auto [idx, part] : {std::pair{&train_idx, &out.train}, std::pair{&val_idx, &out.val},
                           std::pair{&test_idx, &out.test}}) {
    rng.shuffle(std::span(*idx));
    for (auto i : *idx) part->words.push_back(corpus.words[i]);
  }
  return out;
}

SyllableStats syllable_stats(const Corpus& corpus, const Tokenizer& tokenizer) {
  SyllableStats stats;
  for (const auto& w : corpus.words) {
    const auto tokens = tokenizer.tokenize(w.text);
    ++stats.syllables_per_word[w.label][tokens.size()];
    for (const auto& t : tokens) ++stats.syllable_length[w.label][t.size()];
  }
  return stats;
}

void write_histogram(const Histogram& histogram, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto& [value, count] : histogram) out << value << '\t' << count << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::vector<std::filesystem::path> write_stats(const SyllableStats& stats, const Corpus& corpus,
                                               const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& [label, hist] : stats.syllables_per_word) {
    const auto name = corpus.language_name(label);
    auto a = dir / ("syllables_per_word." + name + ".tsv");
    auto b = dir / ("syllable_length." + name + ".tsv");
    write_histogram(hist, a);
    write_histogram(stats.syllable_length.at(label), b);
    written.push_back(std::move(a));
    written.push_back(std::move(b));
  }
  return written;
}

namespace {

void validate(const SyntheticLanguage& lang) {
  if (lang.syllables.empty())
    throw Error(ErrorCode::kInvalidArgument, "synthetic language '" + lang.name + "' has no syllables");
  for (const auto& s : lang.syllables) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; }))
      throw Error(ErrorCode::kInvalidArgument, "syllable '" + s + "' is not [a-z]+");
  }
  double total = 0;
  for (double w : lang.length_weights) {
    if (!(w >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "negative length weight");
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kInvalidArgument, "length weights sum to zero");
}

std::string draw_word(const SyntheticLanguage& lang, Rng& rng) {
  double total = 0;
  for (double w : lang.length_weights) total += w;
  const double u = rng.uniform01() * total;
  std::size_t syllables = 4;
  double acc = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    acc += lang.length_weights[k];
    if (u < acc) {
      syllables = k + 1;
      break;
    }
  }
  std::string word;
  for (std::size_t k = 0; k < syllables; ++k)
    word += lang.syllables[rng.uniform_below(lang.syllables.size())];
  return word;
}

}  // namespace

Corpus generate_synthetic(const SyntheticLanguage& first, const SyntheticLanguage& second,
                          std::size_t n_per_language, std::uint64_t seed) {
  validate(first);
  validate(second);
  if (n_per_language == 0) throw Error(ErrorCode::kInvalidArgument, "n_per_language must be > 0");
  const std::set<std::string> a(first.syllables.begin(), first.syllables.end());
  const std::set<std::string> b(second.syllables.begin(), second.syllables.end());
  if (a == b) throw Error(ErrorCode::kInvalidArgument, "syllable inventories are identical");

  Corpus corpus;
  corpus.language_names[1] = first.name;
  corpus.language_names[0] = second.name;
  Rng rng1(derive_seed(seed, 1));
  Rng rng0(derive_seed(seed, 0));
  corpus.words.reserve(2 * n_per_language);
  for (std::size_t i = 0; i < n_per_language; ++i) {
    corpus.words.push_back({draw_word(first, rng1), 1});
    corpus.words.push_back({draw_word(second, rng0), 0});
  }
  return corpus;
}

std::pair<SyntheticLanguage, SyntheticLanguage> synthetic_preset(std::string_view name) {
  if (name == "demo") {
    return {{"bangla", {"ka", "mi", "ro", "ta", "ni", "bo", "la", "pa", "ri", "mo"}, {0.25, 0.45, 0.2, 0.1}},
            {"korean", {"seu", "jan", "hal", "gu", "dong", "yeo", "sun", "hye", "jin", "bu"}, {0.3, 0.4, 0.2, 0.1}}};
  }
  if (name == "hard") {
    // Consonants k m r t n and vowels a e i o u each appear exactly twice in
    // both inventories; only the pairings differ.
    return {{"alpha", {"ka", "me", "ri", "to", "nu", "ke", "mi", "ro", "tu", "na"}, {0.25, 0.4, 0.25, 0.1}},
            {"beta", {"ki", "mo", "ru", "ta", "ne", "ko", "mu", "ra", "te", "ni"}, {0.25, 0.4, 0.25, 0.1}}};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown synthetic preset '" + std::string(name) + "'");
}

}  // namespace translid
