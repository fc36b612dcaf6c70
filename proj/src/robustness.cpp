#include "translid/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "translid/error.hpp"
#include "translid/format.hpp"

namespace translid {

std::string perturb_word(std::string_view word, std::string_view vowels, std::uint32_t N,
                         const CountDraw& draw) {
  std::string out;
  out.reserve(word.size() * 2);
  for (char c : word) {
    if (vowels.find(c) == std::string_view::npos) {
      out.push_back(c);
      continue;
    }
    const auto count = draw(N);
    if (count > N) throw Error(ErrorCode::kInvalidArgument, "vowel count draw exceeds N");
    out.append(count, c);
  }
  return out;
}

std::string perturb_word(std::string_view word, const PerturbationConfig& config, Rng& rng) {
  return perturb_word(word, config.vowels, config.N, [&rng](std::uint32_t n) {
    return static_cast<std::uint32_t>(rng.uniform_below(std::uint64_t{n} + 1));
  });
}

double correct_class_score(const Classifier& classifier, std::string_view word, int true_label) {
  return correct_class_score(classifier.score(word), true_label);
}

std::optional<double> fractional_difference(double before, double after) {
  if (before <= kMinBeforeScore) return std::nullopt;
  return (after - before) / before;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "mean of empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double population_stddev(std::span<const double> values) {
  const double mu = mean(values);
  // Rounding in the mean would otherwise leave a tiny non-zero spread.
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

double median(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "median of empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double sigma_correctscore(std::span<const double> fractional_diffs) {
  if (fractional_diffs.size() < 2)
    throw Error(ErrorCode::kData, "sigma_correctscore needs at least 2 values");
  return population_stddev(fractional_diffs);
}

double cv_correctscore(std::span<const double> before_scores) {
  if (before_scores.size() < 2)
    throw Error(ErrorCode::kData, "cv_correctscore needs at least 2 values");
  const double sd = population_stddev(before_scores);
  if (sd == 0.0) throw Error(ErrorCode::kData, "cv_correctscore: zero standard deviation");
  return median(before_scores) / sd;
}

std::uint64_t mann_whitney_u2(std::span<const double> before, std::span<const double> after) {
  if (before.empty() || after.empty()) throw Error(ErrorCode::kInvalidArgument, "empty sample");
  struct Entry {
    double value;
    bool is_after;
  };
  std::vector<Entry> pooled;
  pooled.reserve(before.size() + after.size());
  for (double v : before) pooled.push_back({v, false});
  for (double v : after) pooled.push_back({v, true});
  std::sort(pooled.begin(), pooled.end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });

  // Twice the rank sum of the `after` sample; a tie group occupying ranks
  // k..k+t-1 gives each member twice-rank 2k+t-1.
  std::uint64_t rank2_sum = 0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
    const std::uint64_t twice_rank = 2 * (i + 1) + (j - i) - 1;
    for (std::size_t k = i; k < j; ++k)
      if (pooled[k].is_after) rank2_sum += twice_rank;
    i = j;
  }
  const std::uint64_t n = after.size();
  return rank2_sum - n * (n + 1);
}

double min_u(std::span<const double> before, std::span<const double> after) {
  const std::uint64_t pairs2 = 2 * std::uint64_t{before.size()} * after.size();
  const std::uint64_t u2 = mann_whitney_u2(before, after);
  return static_cast<double>(std::min(u2, pairs2 - u2)) / static_cast<double>(pairs2);
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "spearman needs two equal-length samples of size >= 2");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mx = mean(rx), my = mean(ry);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

Perturber seeded_perturber(std::uint64_t seed, std::string vowels) {
  return [seed, vowels = std::move(vowels)](std::string_view word, std::uint32_t N, std::size_t index) {
    Rng rng(derive_seed(seed, N, index));
    return perturb_word(word, PerturbationConfig{N, vowels, seed}, rng);
  };
}

RobustnessRow measure_robustness(const Classifier& classifier, const Corpus& test, std::uint32_t N,
                                 const Perturber& perturber, UPooling pooling) {
  if (test.size() < 2) throw Error(ErrorCode::kData, "robustness needs at least 2 test words");

  std::vector<double> all_before;
  std::vector<double> before, after, fracs;
  std::vector<int> labels;
  all_before.reserve(test.size());
  RobustnessRow row;
  row.N = N;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto& w = test.words[i];
    const double b = correct_class_score(classifier, w.text, w.label);
    all_before.push_back(b);
    const auto perturbed = perturber(w.text, N, i);
    if (perturbed.empty() || b <= kMinBeforeScore) {
      ++row.excluded;
      continue;
    }
    const double a = correct_class_score(classifier, perturbed, w.label);
    before.push_back(b);
    after.push_back(a);
    fracs.push_back(*fractional_difference(b, a));
    labels.push_back(w.label);
  }
  row.scored = fracs.size();
  row.sigma = sigma_correctscore(fracs);
  row.cv = cv_correctscore(all_before);
  row.ratio = row.sigma / row.cv;

  if (pooling == UPooling::kPooled) {
    row.min_u = min_u(before, after);
  } else {
    row.min_u = 0.5;
    for (int label : {0, 1}) {
      std::vector<double> b, a;
      for (std::size_t k = 0; k < labels.size(); ++k)
        if (labels[k] == label) {
          b.push_back(before[k]);
          a.push_back(after[k]);
        }
      if (!b.empty()) row.min_u = std::min(row.min_u, min_u(b, a));
    }
  }
  return row;
}

RobustnessReport sweep(const Classifier& classifier, const Corpus& test, const SweepOptions& options) {
  if (options.Ns.empty()) throw Error(ErrorCode::kInvalidArgument, "empty list of perturbation levels");
  const auto perturber = seeded_perturber(options.seed, options.vowels);
  RobustnessReport report;
  for (auto N : options.Ns)
    report.rows.push_back(measure_robustness(classifier, test, N, perturber, options.pooling));
  return report;
}

std::vector<std::uint32_t> dedupe_levels(std::vector<std::uint32_t> Ns, bool* had_duplicates) {
  const auto n = Ns.size();
  std::sort(Ns.begin(), Ns.end());
  Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());
  if (had_duplicates) *had_duplicates = Ns.size() != n;
  return Ns;
}

void write_sweep(const RobustnessReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << "N\tsigma\tcv\tratio\tmin_u\texcluded\n";
  for (const auto& r : report.rows)
    out << r.N << '\t' << format_double(r.sigma) << '\t' << format_double(r.cv) << '\t'
        << format_double(r.ratio) << '\t' << format_double(r.min_u) << '\t' << r.excluded << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace translid
