#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsallis_ea/error.hpp"
#include "tsallis_ea/random.hpp"

namespace tsallis_ea {

/// Box-bounded search space of `variables` reals, each encoded with
/// `bits_per_var` bits. Bounds are shared by every variable.
class SearchSpace {
 public:
  // Widest field whose 2^b - 1 levels are exactly representable as doubles.
  static constexpr std::size_t kMaxBitsPerVar = 52;

  SearchSpace(std::size_t variables, std::size_t bits_per_var, double lo, double hi)
      : variables_(variables), bits_per_var_(bits_per_var), lo_(lo), hi_(hi) {
    detail::require(variables >= 1, "search space needs at least one variable");
    detail::require(bits_per_var >= 1 && bits_per_var <= kMaxBitsPerVar,
                    "bits per variable must be in [1, 52]");
    detail::require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
                    "search space bounds must be finite with lo < hi");
  }

  std::size_t variables() const noexcept { return variables_; }
  std::size_t bits_per_var() const noexcept { return bits_per_var_; }
  std::size_t genome_length() const noexcept { return variables_ * bits_per_var_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  friend bool operator==(const SearchSpace&, const SearchSpace&) = default;

 private:
  std::size_t variables_;
  std::size_t bits_per_var_;
  double lo_;
  double hi_;
};

/// Fixed-length bitstring. Every element is 0 or 1; the length is set at
/// construction.
class Genome {
 public:
  Genome() = default;

  explicit Genome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (std::uint8_t b : bits_) {
      detail::require(b <= 1, "genome bits must be 0 or 1");
    }
  }

  static Genome zeros(std::size_t length) { return Genome(std::vector<std::uint8_t>(length, 0)); }
  static Genome ones(std::size_t length) { return Genome(std::vector<std::uint8_t>(length, 1)); }

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::string to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] != 0) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const Genome&, const Genome&) = default;
  friend auto operator<=>(const Genome&, const Genome&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

using Population = std::vector<Genome>;

// lo + (hi - lo) * word / (2^b - 1). Exact at both endpoints.
inline double decode_variable(std::uint64_t word, std::size_t bits, double lo, double hi) {
  detail::require(bits >= 1 && bits <= SearchSpace::kMaxBitsPerVar, "bit count must be in [1, 52]");
  detail::require(lo < hi, "decode bounds must satisfy lo < hi");
  const std::uint64_t top = (std::uint64_t{1} << bits) - 1;
  detail::require(word <= top, "encoded word out of range for bit count");
  if (word == 0) return lo;
  if (word == top) return hi;
  return lo + (hi - lo) * (static_cast<double>(word) / static_cast<double>(top));
}

// Variable i reads bits [i*b, (i+1)*b), most significant bit first.
inline std::vector<double> decode_genome(const Genome& genome, const SearchSpace& space) {
  detail::require(genome.size() == space.genome_length(),
                  "genome length " + std::to_string(genome.size()) +
                      " does not match search space length " +
                      std::to_string(space.genome_length()));
  const std::size_t b = space.bits_per_var();
  std::vector<double> point(space.variables());
  for (std::size_t i = 0; i < space.variables(); ++i) {
    std::uint64_t word = 0;
    for (std::size_t k = 0; k < b; ++k) {
      word = (word << 1) | genome[i * b + k];
    }
    point[i] = decode_variable(word, b, space.lo(), space.hi());
  }
  return point;
}

// One raw 64-bit draw per 64 loci (the last word partially used).
inline Genome random_genome(RandomStream& rng, const SearchSpace& space) {
  const std::size_t length = space.genome_length();
  std::vector<std::uint8_t> bits(length);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < length; ++i) {
    if (i % 64 == 0) word = rng.next();
    bits[i] = static_cast<std::uint8_t>((word >> (63 - i % 64)) & 1U);
  }
  return Genome(std::move(bits));
}

}  // namespace tsallis_ea
