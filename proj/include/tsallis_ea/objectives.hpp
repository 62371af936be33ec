#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsallis_ea/error.hpp"
#include "tsallis_ea/genome.hpp"

namespace tsallis_ea {

// Benchmark energies. All three are minimized, with global minimum 0 at the origin.

inline double ackley(std::span<const double> x) {
  detail::require(!x.empty(), "ackley needs at least one variable");
  const double l = static_cast<double>(x.size());
  double squares = 0.0;
  double cosines = 0.0;
  for (double xi : x) {
    squares += xi * xi;
    cosines += std::cos(2.0 * std::numbers::pi * xi);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(squares / l)) - std::exp(cosines / l) + 20.0 +
         std::numbers::e;
}

// A = 10; the sum covers both the square and the cosine term.
inline double rastrigin(std::span<const double> x) {
  detail::require(!x.empty(), "rastrigin needs at least one variable");
  constexpr double a = 10.0;
  double sum = a * static_cast<double>(x.size());
  for (double xi : x) {
    sum += xi * xi - a * std::cos(2.0 * std::numbers::pi * xi);
  }
  return sum;
}

// The product index is 1-based: cos(x_i / sqrt(i)), i = 1..l.
inline double griewangk(std::span<const double> x) {
  detail::require(!x.empty(), "griewangk needs at least one variable");
  double sum = 0.0;
  double product = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i] / 4000.0;
    product *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum - product + 1.0;
}

struct Objective {
  std::string_view name;
  double lo;
  double hi;
  double (*evaluate)(std::span<const double>);

  double operator()(std::span<const double> x) const { return evaluate(x); }

  SearchSpace search_space(std::size_t variables, std::size_t bits_per_var) const {
    return SearchSpace(variables, bits_per_var, lo, hi);
  }
};

inline constexpr std::array<Objective, 3> kObjectives{{
    {"ackley", -30.0, 30.0, &ackley},
    {"rastrigin", -5.12, 5.12, &rastrigin},
    {"griewangk", -600.0, 600.0, &griewangk},
}};

inline const Objective& find_objective(std::string_view name) {
  for (const Objective& objective : kObjectives) {
    if (objective.name == name) return objective;
  }
  throw UsageError("unknown objective '" + std::string(name) +
                   "' (expected ackley, rastrigin or griewangk)");
}

inline std::vector<double> evaluate_population(const Population& population,
                                               const Objective& objective,
                                               const SearchSpace& space) {
  std::vector<double> energies;
  energies.reserve(population.size());
  for (const Genome& genome : population) {
    energies.push_back(objective(decode_genome(genome, space)));
  }
  return energies;
}

}  // namespace tsallis_ea
