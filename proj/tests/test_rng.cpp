#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "translid/rng.hpp"

using namespace translid;

TEST(Rng, EngineIsStandardMt19937_64) {
  // The standard requires this value for the 10000th draw of a
  // default-seeded mt19937_64.
  Rng rng(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next_u64();
  EXPECT_EQ(x, 9981545732273789042ull);
}

TEST(Rng, UniformBelowCoversRangeEvenly) {
  Rng rng(1);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.uniform_below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  EXPECT_EQ(rng.uniform_below(1), 0u);
}

TEST(Rng, Uniform01InHalfOpenUnitInterval) {
  Rng rng(2);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(Rng, ShuffleIsPermutationAndSeeded) {
  std::vector<int> a(50), b(50);
  std::iota(a.begin(), a.end(), 0);
  b = a;
  Rng r1(3), r2(3);
  r1.shuffle(std::span(a));
  r2.shuffle(std::span(b));
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::set<int>(a.begin(), a.end()).size(), 50u);
  std::vector<int> sorted(50);
  std::iota(sorted.begin(), sorted.end(), 0);
  EXPECT_NE(a, sorted);
}

TEST(Rng, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 10; ++s)
    for (std::uint64_t a = 0; a < 10; ++a)
      for (std::uint64_t b = 0; b < 10; ++b) seen.insert(derive_seed(s, a, b));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(4, 1, 2), derive_seed(4, 1, 2));
}
