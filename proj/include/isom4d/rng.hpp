#pragma once

#include <cstdint>

#include "isom4d/types.hpp"

namespace isom4d {

/// Deterministic 64-bit generator (splitmix64). Used for every sampling
/// operation so that identical seeds give identical results on any platform;
/// the standard library distributions are implementation-defined and are
/// avoided on purpose.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish draw in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

/// Random rational on the sampling grid: numerator in [-9, 9], denominator
/// in {1, 2, 3}.
inline Rational random_rational(SplitMix64& rng) {
  const long long num = rng.int_in(-9, 9);
  const long long den = rng.int_in(1, 3);
  return Rational(num, den);
}

inline Rational random_nonzero_rational(SplitMix64& rng) {
  for (;;) {
    Rational r = random_rational(rng);
    if (!r.is_zero()) return r;
  }
}

inline Rational random_positive_rational(SplitMix64& rng) {
  for (;;) {
    Rational r = random_rational(rng);
    if (r.sign() > 0) return r;
  }
}

inline Vec random_vector(SplitMix64& rng, Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = random_rational(rng);
  return v;
}

inline constexpr std::uint64_t kDefaultSeed = 20240913ULL;

}  // namespace isom4d
