#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace rans {

/// All sampling uses mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded draws go through the helpers below instead of
/// std::uniform_int_distribution (implementation-defined), so a seed gives the
/// same trees on every platform.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the `index`-th independent stream derived from a base seed.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(base ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

/// Uniform integer in [0, bound). bound must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform arbitrary-precision integer in [0, bound). bound must be positive.
mpz_class uniform_below(Rng& rng, const mpz_class& bound);

}  // namespace rans
