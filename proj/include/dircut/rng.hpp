#pragma once

#include <cstdint>

#include "dircut/rational.hpp"

namespace dircut {

// Splittable counter-based pseudorandom stream (splitmix64 finalizer over a
// keyed counter). Not cryptographic. Each consumer derives its own child
// stream with split(), so concurrent branches never share mutable state and
// whole runs are reproducible from a single seed.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t key) : key_(mix(key ^ kKeyTweak)) {}

  std::uint64_t next() { return mix(key_ + kGolden * ++counter_); }

  // Child stream independent of this stream's position.
  SplitRng split(std::uint64_t salt) const {
    return SplitRng(mix(key_ ^ mix(salt + kSplitTweak)));
  }

  // Uniform in [0, bound). Rejection sampling, exactly unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  // Exact Bernoulli draw for a rational probability in [0, 1].
  bool bernoulli(const Rational& p) {
    if (p.num() <= 0) return false;
    if (p >= Rational(1)) return true;
    return below(static_cast<std::uint64_t>(p.den())) <
           static_cast<std::uint64_t>(p.num());
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kKeyTweak = 0xd1b54a32d192ed03ULL;
  static constexpr std::uint64_t kSplitTweak = 0x8cb92ba72f3d8dd7ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dircut
