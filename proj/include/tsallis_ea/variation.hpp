#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tsallis_ea/error.hpp"
#include "tsallis_ea/genome.hpp"
#include "tsallis_ea/random.hpp"

namespace tsallis_ea {

struct VariationConfig {
  double p_crossover = 0.8;
  double p_bit_mutation = 0.02;

  void validate() const {
    detail::require(p_crossover >= 0.0 && p_crossover <= 1.0, "crossover probability must be in [0, 1]");
    detail::require(p_bit_mutation >= 0.0 && p_bit_mutation <= 1.0,
                    "bit mutation probability must be in [0, 1]");
  }
};

// child1 takes a where mask is 0 and b where mask is 1; child2 the complement.
inline std::pair<Genome, Genome> crossover_with_mask(const Genome& a, const Genome& b,
                                                     std::span<const std::uint8_t> mask) {
  detail::require(a.size() == b.size(), "crossover parents differ in length");
  detail::require(mask.size() == a.size(), "crossover mask length differs from parents");
  std::vector<std::uint8_t> first(a.size());
  std::vector<std::uint8_t> second(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool swap = mask[i] != 0;
    first[i] = swap ? b[i] : a[i];
    second[i] = swap ? a[i] : b[i];
  }
  return {Genome(std::move(first)), Genome(std::move(second))};
}

// Fair mask drawn from ceil(L / 64) raw words.
inline std::pair<Genome, Genome> uniform_crossover(const Genome& a, const Genome& b,
                                                   RandomStream& rng) {
  detail::require(a.size() == b.size(), "crossover parents differ in length");
  std::vector<std::uint8_t> mask(a.size());
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (i % 64 == 0) word = rng.next();
    mask[i] = static_cast<std::uint8_t>((word >> (63 - i % 64)) & 1U);
  }
  return crossover_with_mask(a, b, mask);
}

// Independent per-bit flips; always consumes one uniform draw per locus.
inline Genome mutate(const Genome& genome, double p_bit, RandomStream& rng) {
  detail::require(p_bit >= 0.0 && p_bit <= 1.0, "bit mutation probability must be in [0, 1]");
  std::vector<std::uint8_t> bits(genome.bits().begin(), genome.bits().end());
  for (std::uint8_t& bit : bits) {
    if (rng.uniform() < p_bit) bit ^= 1U;
  }
  return Genome(std::move(bits));
}

/// Shuffle, pair neighbours, cross each pair with probability p_crossover
/// (an odd individual out is left alone), then mutate everyone.
inline Population vary_population(const Population& population, const VariationConfig& config,
                                  RandomStream& rng) {
  config.validate();
  Population next = population;
  for (std::size_t i = next.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(next[i - 1], next[j]);
  }
  for (std::size_t i = 0; i + 1 < next.size(); i += 2) {
    if (rng.uniform() < config.p_crossover) {
      auto [first, second] = uniform_crossover(next[i], next[i + 1], rng);
      next[i] = std::move(first);
      next[i + 1] = std::move(second);
    }
  }
  for (Genome& genome : next) {
    genome = mutate(genome, config.p_bit_mutation, rng);
  }
  return next;
}

}  // namespace tsallis_ea
