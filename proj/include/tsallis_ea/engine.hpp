#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsallis_ea/error.hpp"
#include "tsallis_ea/genome.hpp"
#include "tsallis_ea/objectives.hpp"
#include "tsallis_ea/random.hpp"
#include "tsallis_ea/schedules.hpp"
#include "tsallis_ea/selection.hpp"
#include "tsallis_ea/variation.hpp"

namespace tsallis_ea {

/// Parameters of a single evolutionary run. Defaults are the benchmark
/// settings: 15 variables at 5 bits, n = 350, 100 generations, p_c = 0.8,
/// per-bit mutation 0.02, beta0 = 200, alpha = 1.01.
struct EngineConfig {
  std::string objective = "ackley";
  std::size_t variables = 15;
  std::size_t bits_per_var = 5;
  std::size_t population_size = 350;
  std::size_t generations = 100;
  SelectionScheme scheme = SelectionScheme::boltzmann;
  double beta0 = 200.0;
  double alpha = 1.01;
  // Initial non-extensive index; required by (and only meaningful for) tsallis.
  std::optional<double> q0;
  bool constant_q = false;
  VariationConfig variation;
  EnergyShift energy_shift = EnergyShift::on;
  std::uint64_t seed = 0;

  ScheduleConfig schedule() const {
    return {beta0, alpha, q0.value_or(1.0), generations, constant_q};
  }

  SearchSpace search_space() const {
    return find_objective(objective).search_space(variables, bits_per_var);
  }

  void validate() const {
    find_objective(objective);
    search_space();
    detail::require(population_size >= 2, "population size must be at least 2");
    detail::require(generations >= 1, "generation count must be at least 1");
    detail::require(scheme != SelectionScheme::tsallis || q0.has_value(),
                    "tsallis selection needs an initial q0");
    schedule().validate();
    variation.validate();
  }
};

struct GenerationRecord {
  std::size_t generation = 0;  // 1-based
  double beta = 0.0;
  double q = 1.0;
  double best_energy = 0.0;
  double mean_energy = 0.0;
  double best_so_far = 0.0;
  double selection_entropy = 0.0;

  friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

struct RunTrace {
  std::vector<GenerationRecord> records;
  Genome best_genome;
  std::vector<double> best_point;
  double best_energy = std::numeric_limits<double>::infinity();
};

/// Population and schedule position between two generations. `t` counts
/// completed generations; beta and q are the values the next selection uses.
struct EngineState {
  std::size_t t = 0;
  Population population;
  double beta = 0.0;
  double q = 1.0;
  std::vector<GenerationRecord> records;
  Genome best_genome;
  double best_so_far = std::numeric_limits<double>::infinity();
};

// Streams are derived from the run seed as derive_seed(seed, {tag, t}).
enum class StreamTag : std::uint64_t { initialization = 0, selection = 1, variation = 2 };

inline RandomStream make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t generation = 0) {
  return RandomStream(derive_seed(seed, {static_cast<std::uint64_t>(tag), generation}));
}

/// The generational loop: evaluate, select with replacement, vary, advance
/// the schedules. Non-tsallis schemes record q = 1 and the Shannon entropy of
/// their selection distribution.
class Engine {
 public:
  explicit Engine(EngineConfig config)
      : config_(std::move(config)),
        objective_(&find_objective(config_.objective)),
        space_(config_.search_space()),
        schedule_(config_.schedule()),
        betas_(config_.generations + 1) {
    config_.validate();
    CauchySchedule cauchy(schedule_);
    for (std::size_t t = 1; t <= config_.generations + 1; ++t) betas_[t - 1] = cauchy.beta(t);
  }

  const EngineConfig& config() const noexcept { return config_; }
  const SearchSpace& search_space() const noexcept { return space_; }
  const Objective& objective() const noexcept { return *objective_; }

  EngineState init() const {
    EngineState state;
    RandomStream rng = make_stream(config_.seed, StreamTag::initialization);
    state.population.reserve(config_.population_size);
    for (std::size_t k = 0; k < config_.population_size; ++k) {
      state.population.push_back(random_genome(rng, space_));
    }
    state.beta = betas_[0];
    state.q = q_for(0);
    return state;
  }

  EngineState step(const EngineState& state) const {
    detail::require(state.t < config_.generations,
                    "run already finished after " + std::to_string(state.t) + " generations");
    detail::require(state.population.size() == config_.population_size,
                    "population size drifted from the configured n");

    const std::vector<double> energies = evaluate_population(state.population, *objective_, space_);
    const SelectionWeights weights = select_weights(energies, state);

    RandomStream selection_rng = make_stream(config_.seed, StreamTag::selection, state.t);
    Population selected =
        sample_population(state.population, weights, config_.population_size, selection_rng);
    RandomStream variation_rng = make_stream(config_.seed, StreamTag::variation, state.t);

    EngineState next;
    next.population = vary_population(selected, config_.variation, variation_rng);
    next.t = state.t + 1;

    const auto best = std::min_element(energies.begin(), energies.end());
    next.best_so_far = state.best_so_far;
    next.best_genome = state.best_genome;
    if (*best < state.best_so_far) {
      next.best_so_far = *best;
      next.best_genome = state.population[static_cast<std::size_t>(best - energies.begin())];
    }

    GenerationRecord record;
    record.generation = next.t;
    record.beta = state.beta;
    record.q = state.q;
    record.best_energy = *best;
    record.mean_energy = std::accumulate(energies.begin(), energies.end(), 0.0) /
                         static_cast<double>(energies.size());
    record.best_so_far = next.best_so_far;
    record.selection_entropy = tsallis_entropy(weights, state.q);
    next.records = state.records;
    next.records.push_back(record);

    // Selection at generation t (0-based) uses beta_{t+1}.
    next.beta = betas_[next.t];
    next.q = next.t < config_.generations ? q_for(next.t) : state.q;
    return next;
  }

  RunTrace trace(const EngineState& state) const {
    RunTrace result;
    result.records = state.records;
    result.best_genome = state.best_genome;
    result.best_energy = state.best_so_far;
    if (state.best_genome.size() == space_.genome_length()) {
      result.best_point = decode_genome(state.best_genome, space_);
    }
    return result;
  }

  RunTrace run() const {
    EngineState state = init();
    while (state.t < config_.generations) {
      state = step(state);
    }
    return trace(state);
  }

 private:
  double q_for(std::size_t t) const {
    return config_.scheme == SelectionScheme::tsallis ? scheduled_q(t, schedule_) : 1.0;
  }

  SelectionWeights select_weights(const std::vector<double>& energies,
                                  const EngineState& state) const {
    switch (config_.scheme) {
      case SelectionScheme::proportionate:
        return proportionate_weights(energies);
      case SelectionScheme::boltzmann:
        return boltzmann_weights(energies, state.beta);
      case SelectionScheme::tsallis:
        return tsallis_weights(energies, state.beta, state.q, config_.energy_shift);
    }
    throw UsageError("unknown selection scheme");
  }

  EngineConfig config_;
  const Objective* objective_;
  SearchSpace space_;
  ScheduleConfig schedule_;
  // betas_[t - 1] = beta_t for t = 1..T+1.
  std::vector<double> betas_;
};

inline EngineState init(const EngineConfig& config) { return Engine(config).init(); }

inline EngineState step(const EngineState& state, const EngineConfig& config) {
  return Engine(config).step(state);
}

inline RunTrace run(const EngineConfig& config) { return Engine(config).run(); }

}  // namespace tsallis_ea
