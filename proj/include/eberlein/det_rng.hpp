#pragma once

#include <cstdint>

#include "eberlein/rational.hpp"

namespace eberlein {

/// splitmix64. Standard-library distributions are implementation-defined, so
/// randomized suites draw from this to keep reports byte-identical across
/// platforms.
class DetRng {
public:
  explicit DetRng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform-ish integer in [lo, hi]; modulo bias is irrelevant here.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Small random rational with numerator in [-num_max, num_max] and
  /// denominator in [1, den_max].
  Rational rational(std::int64_t num_max, std::int64_t den_max) {
    return Rational(range(-num_max, num_max), range(1, den_max));
  }

  bool coin() { return next() & 1u; }

private:
  std::uint64_t state_;
};

}  // namespace eberlein
