#include "translid/classifier.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "translid/error.hpp"

namespace translid {

std::string TrainedModel::language_name(Label label) const {
  if (auto it = language_names.find(label); it != language_names.end() && !it->second.empty())
    return it->second;
  return "lang" + std::to_string(label);
}

namespace {

constexpr std::string_view kMagic = "TLIDMODL";

class Writer {
 public:
  void bytes(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  template <typename T>
  void uint(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f64(double v) { uint(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    uint(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
  std::string& buffer() { return out_; }

 private:
  std::string out_;
};

Error corrupt(const std::string& why) {
  return Error(ErrorCode::kCorrupt, "corrupt model file: " + why);
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::string_view take(std::size_t n) {
    if (data_.size() - pos_ < n) throw corrupt("truncated");
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  template <typename T>
  T uint() {
    const auto s = take(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      v |= static_cast<T>(static_cast<unsigned char>(s[i])) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }
  std::string str() {
    const auto n = uint<std::uint32_t>();
    return std::string(take(n));
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_model(const TrainedModel& model) {
  const auto& h = model.hyper;
  const auto& p = model.params;
  if (p.vocab_size() != h.vocab_size || p.embed_dim() != h.embed_dim ||
      p.hidden_size() != h.hidden_size)
    throw Error(ErrorCode::kInvalidArgument, "parameters do not match hyperparameters");

  Writer w;
  w.bytes(kMagic.data(), kMagic.size());
  w.uint(kModelFormatVersion);
  w.uint(static_cast<std::uint8_t>(model.mode));
  w.uint(h.vocab_size);
  w.uint(h.embed_dim);
  w.uint(h.hidden_size);
  w.f64(h.dropout_rate);
  w.f64(h.l2_lambda);
  w.uint(h.seed);
  w.bytes(model.pattern_checksum.data(), model.pattern_checksum.size());
  w.str(model.language_name(1));
  w.str(model.language_name(0));
  w.uint(static_cast<std::uint64_t>(p.size()));
  for (double v : p.data()) w.f64(v);
  const auto digest = md5(w.buffer());
  w.bytes(digest.data(), digest.size());
  return std::move(w.buffer());
}

TrainedModel deserialize_model(std::string_view bytes) {
  if (bytes.size() < kMagic.size() + 16) throw corrupt("truncated");
  if (bytes.substr(0, kMagic.size()) != kMagic) throw corrupt("bad magic");
  const auto body = bytes.substr(0, bytes.size() - 16);
  const auto digest = md5(body);
  if (std::memcmp(digest.data(), bytes.data() + body.size(), 16) != 0)
    throw corrupt("checksum mismatch (truncated or modified)");

  Reader r(body);
  r.take(kMagic.size());
  if (const auto version = r.uint<std::uint32_t>(); version != kModelFormatVersion)
    throw corrupt("unsupported format version " + std::to_string(version));
  TrainedModel m;
  const auto mode = r.uint<std::uint8_t>();
  if (mode > 1) throw corrupt("unknown tokenizer mode");
  m.mode = static_cast<TokenizerMode>(mode);
  m.hyper.vocab_size = r.uint<std::uint32_t>();
  m.hyper.embed_dim = r.uint<std::uint32_t>();
  m.hyper.hidden_size = r.uint<std::uint32_t>();
  m.hyper.dropout_rate = r.f64();
  m.hyper.l2_lambda = r.f64();
  m.hyper.seed = r.uint<std::uint64_t>();
  const auto checksum = r.take(16);
  std::memcpy(m.pattern_checksum.data(), checksum.data(), 16);
  m.language_names[1] = r.str();
  m.language_names[0] = r.str();
  try {
    m.hyper.validate();
  } catch (const Error& e) {
    throw corrupt(e.what());
  }
  const auto count = r.uint<std::uint64_t>();
  if (count != ParamTensor::count(m.hyper.vocab_size, m.hyper.embed_dim, m.hyper.hidden_size))
    throw corrupt("parameter count does not match dimensions");
  m.params = ParamTensor(m.hyper.vocab_size, m.hyper.embed_dim, m.hyper.hidden_size);
  for (auto& v : m.params.data()) v = r.f64();
  if (!r.done()) throw corrupt("trailing bytes");
  return m;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  const auto bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

void require_mode(const TrainedModel& model, TokenizerMode requested) {
  if (model.mode != requested)
    throw Error(ErrorCode::kModeMismatch,
                "mode mismatch: model was trained in " + std::string(to_string(model.mode)) +
                    " mode, " + std::string(to_string(requested)) + " requested");
}

namespace {

Tokenizer checked_tokenizer(const TrainedModel& model, const PatternSet* patterns) {
  if (model.mode == TokenizerMode::kChars) return Tokenizer::chars();
  if (patterns == nullptr)
    throw Error(ErrorCode::kInvalidArgument, "phonetic model requires a pattern file");
  if (patterns->checksum() != model.pattern_checksum)
    throw Error(ErrorCode::kModeMismatch,
                "pattern file checksum " + to_hex(patterns->checksum()) +
                    " differs from the model's " + to_hex(model.pattern_checksum));
  return Tokenizer(*patterns);
}

}  // namespace

Classifier::Classifier(const TrainedModel& model, const PatternSet* patterns)
    : model_(&model), encoder_(checked_tokenizer(model, patterns), model.hyper.vocab_size) {}

double Classifier::score(std::string_view word) const {
  return forward(model_->params, encoder_.encode(word)).score;
}

Prediction Classifier::predict(std::string_view word) const {
  return translid::predict(model_->params, encoder_.encode(word));
}

}  // namespace translid
