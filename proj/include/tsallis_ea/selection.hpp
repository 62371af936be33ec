#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsallis_ea/error.hpp"
#include "tsallis_ea/random.hpp"

namespace tsallis_ea {

enum class SelectionScheme { proportionate, boltzmann, tsallis };

inline std::string_view to_string(SelectionScheme scheme) {
  switch (scheme) {
    case SelectionScheme::proportionate: return "proportionate";
    case SelectionScheme::boltzmann: return "boltzmann";
    case SelectionScheme::tsallis: return "tsallis";
  }
  return "unknown";
}

inline SelectionScheme parse_scheme(std::string_view name) {
  if (name == "proportionate") return SelectionScheme::proportionate;
  if (name == "boltzmann") return SelectionScheme::boltzmann;
  if (name == "tsallis") return SelectionScheme::tsallis;
  throw UsageError("unknown selection scheme '" + std::string(name) +
                   "' (expected proportionate, boltzmann or tsallis)");
}

// Whether Boltzmann/Tsallis weights are computed on E - min(E). Boltzmann is
// invariant under the shift; Tsallis is not.
enum class EnergyShift { on, off };

/// Normalized selection probabilities over a population.
struct SelectionWeights {
  std::vector<double> probs;
  SelectionScheme scheme = SelectionScheme::boltzmann;
  double beta = 0.0;
  double q = 1.0;

  std::size_t size() const noexcept { return probs.size(); }
};

// |q - 1| below this routes Tsallis weights through the exponential branch.
inline constexpr double kUnitQTolerance = 1e-9;
// Regularizer for proportionate selection at E = 0.
inline constexpr double kProportionateEpsilon = 1e-12;

namespace detail {

inline void require_energies(std::span<const double> energies) {
  require(!energies.empty(), "selection needs a nonempty energy vector");
  for (double e : energies) {
    require(std::isfinite(e), "selection energies must be finite");
  }
}

inline void require_beta(double beta) {
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and nonnegative");
}

inline double min_energy(std::span<const double> energies) {
  return *std::min_element(energies.begin(), energies.end());
}

// Point mass on the minimum-energy individuals, split evenly over ties.
inline std::vector<double> argmin_mass(std::span<const double> energies) {
  const double lowest = min_energy(energies);
  std::vector<double> probs(energies.size(), 0.0);
  const auto ties = static_cast<double>(std::count(energies.begin(), energies.end(), lowest));
  for (std::size_t k = 0; k < energies.size(); ++k) {
    if (energies[k] == lowest) probs[k] = 1.0 / ties;
  }
  return probs;
}

// exp(log_w - max log_w), normalized. -inf marks a zero weight; when every
// entry is -inf the result falls back to argmin_mass.
inline std::vector<double> normalize_log_weights(std::vector<double> log_weights,
                                                 std::span<const double> energies) {
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  if (top == -std::numeric_limits<double>::infinity()) {
    return argmin_mass(energies);
  }
  double total = 0.0;
  for (double& w : log_weights) {
    w = std::exp(w - top);
    total += w;
  }
  for (double& w : log_weights) w /= total;
  return log_weights;
}

inline std::vector<double> boltzmann_log_weights(std::span<const double> energies, double beta,
                                                 double offset) {
  std::vector<double> log_weights(energies.size());
  for (std::size_t k = 0; k < energies.size(); ++k) {
    log_weights[k] = -beta * (energies[k] - offset);
  }
  return log_weights;
}

}  // namespace detail

/// Boltzmann selection: p_k proportional to exp(-beta * E_k).
inline SelectionWeights boltzmann_weights(std::span<const double> energies, double beta) {
  detail::require_energies(energies);
  detail::require_beta(beta);
  auto log_weights = detail::boltzmann_log_weights(energies, beta, detail::min_energy(energies));
  return {detail::normalize_log_weights(std::move(log_weights), energies),
          SelectionScheme::boltzmann, beta, 1.0};
}

/// Tsallis selection: p_k proportional to [1 - (1 - q) beta E_k]^(1 / (1 - q)).
///
/// A non-positive bracket gives weight zero. Within kUnitQTolerance of q = 1
/// the exponential limit is used, which makes the result identical to
/// boltzmann_weights under the default shift. If every weight is cut off the
/// whole mass goes to the minimum-energy individual(s).
inline SelectionWeights tsallis_weights(std::span<const double> energies, double beta, double q,
                                        EnergyShift shift = EnergyShift::on) {
  detail::require_energies(energies);
  detail::require_beta(beta);
  detail::require(std::isfinite(q), "q must be finite");
  const double offset = shift == EnergyShift::on ? detail::min_energy(energies) : 0.0;

  std::vector<double> log_weights;
  if (std::abs(q - 1.0) < kUnitQTolerance) {
    log_weights = detail::boltzmann_log_weights(energies, beta, offset);
  } else {
    const double one_minus_q = 1.0 - q;
    log_weights.resize(energies.size());
    for (std::size_t k = 0; k < energies.size(); ++k) {
      const double x = -one_minus_q * beta * (energies[k] - offset);
      // bracket = 1 + x
      log_weights[k] = x > -1.0 ? std::log1p(x) / one_minus_q
                                : -std::numeric_limits<double>::infinity();
    }
  }
  return {detail::normalize_log_weights(std::move(log_weights), energies),
          SelectionScheme::tsallis, beta, q};
}

/// Proportionate selection for minimization: p_k proportional to 1 / (E_k + eps).
inline SelectionWeights proportionate_weights(std::span<const double> energies) {
  detail::require_energies(energies);
  std::vector<double> probs(energies.size());
  double total = 0.0;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    detail::require(energies[k] >= 0.0, "proportionate selection needs nonnegative energies");
    probs[k] = 1.0 / (energies[k] + kProportionateEpsilon);
    total += probs[k];
  }
  for (double& p : probs) p /= total;
  return {std::move(probs), SelectionScheme::proportionate, 0.0, 1.0};
}

/// Tsallis entropy S_q = (1 - sum p_k^q) / (q - 1), Shannon entropy near q = 1.
/// Sums run over the support (p_k > 0).
inline double tsallis_entropy(std::span<const double> probs, double q) {
  detail::require(std::isfinite(q), "q must be finite");
  detail::require(!probs.empty(), "entropy of an empty distribution");
  double total = 0.0;
  for (double p : probs) {
    detail::require(p >= 0.0 && std::isfinite(p), "probabilities must be nonnegative");
    total += p;
  }
  detail::require(std::abs(total - 1.0) <= 1e-9, "probabilities must sum to 1");

  if (std::abs(q - 1.0) < kUnitQTolerance) {
    double h = 0.0;
    for (double p : probs) {
      if (p > 0.0) h -= p * std::log(p);
    }
    return h;
  }
  double power_sum = 0.0;
  for (double p : probs) {
    if (p > 0.0) power_sum += std::pow(p, q);
  }
  return (1.0 - power_sum) / (q - 1.0);
}

inline double tsallis_entropy(const SelectionWeights& weights, double q) {
  return tsallis_entropy(weights.probs, q);
}

/// Roulette-wheel draw of `count` indices, i.i.d. with replacement. One
/// uniform draw per index.
inline std::vector<std::size_t> sample_indices(std::span<const double> probs, std::size_t count,
                                               RandomStream& rng) {
  detail::require(!probs.empty(), "cannot sample from an empty distribution");
  std::vector<double> cumulative(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
  const double total = cumulative.back();
  detail::require(total > 0.0 && std::isfinite(total), "sampling weights must have positive mass");

  // Rounding can leave u*total >= cumulative.back(); such draws go to the
  // last individual with positive probability.
  std::size_t last_positive = probs.size() - 1;
  while (probs[last_positive] <= 0.0) --last_positive;

  std::vector<std::size_t> picks(count);
  for (std::size_t& pick : picks) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto index = static_cast<std::size_t>(it - cumulative.begin());
    pick = std::min(index, last_positive);
  }
  return picks;
}

template <class Individual>
std::vector<Individual> sample_population(std::span<const Individual> population,
                                          const SelectionWeights& weights, std::size_t count,
                                          RandomStream& rng) {
  detail::require(weights.size() == population.size(),
                  "selection weights and population differ in size");
  detail::require(count >= 1, "must select at least one individual");
  std::vector<Individual> selected;
  selected.reserve(count);
  for (std::size_t index : sample_indices(weights.probs, count, rng)) {
    selected.push_back(population[index]);
  }
  return selected;
}

template <class Individual>
std::vector<Individual> sample_population(const std::vector<Individual>& population,
                                          const SelectionWeights& weights, std::size_t count,
                                          RandomStream& rng) {
  return sample_population(std::span<const Individual>(population), weights, count, rng);
}

}  // namespace tsallis_ea
