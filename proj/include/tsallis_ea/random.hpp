#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace tsallis_ea {

// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives a child seed from a parent seed and a path of tags:
//   h0 = mix64(parent), h_{k+1} = mix64(h_k ^ mix64(tag_k)).
inline std::uint64_t derive_seed(std::uint64_t parent,
                                 std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(parent);
  for (std::uint64_t tag : path) {
    h = mix64(h ^ mix64(tag));
  }
  return h;
}

/// Seeded random stream with platform-independent derived draws.
///
/// Only the raw output of std::mt19937_64 (fully specified by the standard) is
/// used; the conversions to doubles, bits and bounded integers are done here
/// instead of through std:: distributions, whose algorithms are
/// implementation-defined.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

  // Uniform integer in [0, bound), bound > 0. Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = next();
    while (x >= limit) {
      x = next();
    }
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tsallis_ea
