#include "rans/random.hpp"

#include <limits>
#include <vector>

#include "rans/errors.hpp"

namespace rans {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "uniform_below: bound must be positive");
  // Rejection on the largest multiple of bound below 2^64.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

mpz_class uniform_below(Rng& rng, const mpz_class& bound) {
  if (sgn(bound) <= 0) throw Error(ErrorCode::kInvalidArgument, "uniform_below: bound must be positive");
  if (bound == 1) return 0;
  const mpz_class top = bound - 1;
  const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  mpz_class x;
  for (;;) {
    for (auto& w : buf) w = rng();
    const std::size_t spare = words * 64 - bits;
    if (spare > 0) buf.back() &= (~std::uint64_t{0}) >> spare;
    // Least-significant word first.
    mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (x < bound) return x;
  }
}

}  // namespace rans
