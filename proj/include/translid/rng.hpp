#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace translid {

// Portable seeded generator.  The bit stream is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the reductions below are done here
// rather than through <random> distributions, whose algorithms are
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound).  Rejection sampling on the top of the
  // range keeps the draw exactly uniform.  bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

// Seed for the stream identified by (seed, a, b), e.g. (sweep seed, N, word
// index).  Streams for distinct keys are statistically independent.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace translid
