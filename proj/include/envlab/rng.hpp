#pragma once

// Seeded, platform-independent randomness for witness searches.  The standard
// distributions are not byte-stable across implementations, so a fixed
// splitmix64 stream keeps every randomized search reproducible from its seed.

#include "envlab/field.hpp"

#include <cstdint>

namespace envlab {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw from {0, ..., n-1} (n > 0); rejection-free is fine here
  /// because witness searches only need reproducibility, not perfect bias.
  std::uint64_t bounded(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

/// Random scalar for hom-combination searches: the full field for F_p, small
/// integers for the rationals.
template <class K>
K random_scalar(SplitMix64& rng, const FieldSpec& field);

template <>
inline Rational random_scalar<Rational>(SplitMix64& rng, const FieldSpec&) {
  return Rational(static_cast<long long>(rng.bounded(11)) - 5);
}

template <>
inline Fp random_scalar<Fp>(SplitMix64& rng, const FieldSpec& field) {
  return Fp(static_cast<long long>(rng.bounded(static_cast<std::uint64_t>(field.p))), field.p);
}

}  // namespace envlab
