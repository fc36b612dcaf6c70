#include "translid/rng.hpp"

#include <limits>

namespace translid {

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  // Largest multiple of bound that fits; values at or above it are redrawn.
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;
  std::uint64_t x = next_u64();
  while (x > limit) x = next_u64();
  return x % bound;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(seed) ^ a) ^ b);
}

}  // namespace translid
