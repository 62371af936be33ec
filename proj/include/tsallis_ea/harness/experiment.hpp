#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tsallis_ea/engine.hpp"
#include "tsallis_ea/error.hpp"
#include "tsallis_ea/random.hpp"

namespace tsallis_ea::harness {

/// A set of engine configurations compared under identical replicate counts.
/// Each config's own seed is ignored; run seeds come from master_seed.
struct ExperimentConfig {
  std::vector<EngineConfig> configs;
  std::size_t runs = 20;
  std::uint64_t master_seed = 0;
  std::filesystem::path output_dir = ".";
  bool plot = false;
  // Worker threads for replicate runs; 0 picks hardware concurrency.
  std::size_t threads = 0;

  void validate() const {
    detail::require(!configs.empty(), "experiment needs at least one engine configuration");
    detail::require(runs >= 1, "experiment needs at least one run per configuration");
    for (const EngineConfig& config : configs) {
      config.validate();
      const EngineConfig& first = configs.front();
      detail::require(config.objective == first.objective && config.variables == first.variables &&
                          config.bits_per_var == first.bits_per_var &&
                          config.population_size == first.population_size &&
                          config.generations == first.generations,
                      "compared configurations must share objective, encoding, n and T");
    }
  }
};

// Injective in (config, run) for indices below 2^32, because mix64 is a bijection.
inline std::uint64_t run_seed(std::uint64_t master_seed, std::size_t config_index,
                              std::size_t run_index) {
  return mix64(master_seed ^ ((static_cast<std::uint64_t>(config_index) << 32) |
                              static_cast<std::uint64_t>(run_index & 0xffffffffU)));
}

// "boltzmann", "proportionate", or "tsallis_q0-1.5" (with "_constq" for constant q).
inline std::string config_label(const EngineConfig& config) {
  std::string label(to_string(config.scheme));
  if (config.scheme == SelectionScheme::tsallis && config.q0) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "_q0-%g", *config.q0);
    label += buffer;
    if (config.constant_q) label += "_constq";
  }
  return label;
}

// Legend text, e.g. "tsallis (q0 = 1.5)".
inline std::string config_title(const EngineConfig& config) {
  std::string title(to_string(config.scheme));
  if (config.scheme == SelectionScheme::tsallis && config.q0) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, " (q0 = %g%s)", *config.q0,
                  config.constant_q ? ", constant" : "");
    title += buffer;
  }
  return title;
}

struct AggregateRecord {
  std::size_t generation = 0;
  double beta = 0.0;
  double q = 1.0;
  double best_so_far_mean = 0.0;
  double best_so_far_std = 0.0;
  double pop_mean_energy_mean = 0.0;
  double pop_mean_energy_std = 0.0;
  double selection_entropy_mean = 0.0;

  friend bool operator==(const AggregateRecord&, const AggregateRecord&) = default;
};

/// Per-generation statistics across the replicate runs of one configuration.
/// Standard deviations use the population formula (divide by R).
struct AggregateTrace {
  EngineConfig config;
  std::string label;
  std::size_t runs = 0;
  std::vector<AggregateRecord> records;

  double final_best_so_far_mean() const {
    return records.empty() ? std::nan("") : records.back().best_so_far_mean;
  }
};

namespace detail {

struct MeanStd {
  double mean;
  double std;
};

inline MeanStd mean_std(std::span<const double> values) {
  const auto count = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / count;
  double squares = 0.0;
  for (double v : values) squares += (v - mean) * (v - mean);
  return {mean, std::sqrt(squares / count)};
}

}  // namespace detail

inline AggregateTrace aggregate(const EngineConfig& config, std::span<const RunTrace> traces) {
  tsallis_ea::detail::require(!traces.empty(), "cannot aggregate zero runs");
  const std::size_t length = traces.front().records.size();
  for (const RunTrace& trace : traces) {
    tsallis_ea::detail::require(trace.records.size() == length,
                                "aggregated traces differ in length");
  }
  AggregateTrace result;
  result.config = config;
  result.label = config_label(config);
  result.runs = traces.size();
  result.records.reserve(length);

  std::vector<double> best(traces.size());
  std::vector<double> mean(traces.size());
  std::vector<double> entropy(traces.size());
  for (std::size_t g = 0; g < length; ++g) {
    for (std::size_t r = 0; r < traces.size(); ++r) {
      const GenerationRecord& record = traces[r].records[g];
      best[r] = record.best_so_far;
      mean[r] = record.mean_energy;
      entropy[r] = record.selection_entropy;
    }
    const GenerationRecord& head = traces.front().records[g];
    const auto best_stats = detail::mean_std(best);
    const auto mean_stats = detail::mean_std(mean);
    AggregateRecord row;
    row.generation = head.generation;
    row.beta = head.beta;
    row.q = head.q;
    // Clamp guards the rounding of an all-equal column.
    row.best_so_far_mean = std::clamp(best_stats.mean, *std::min_element(best.begin(), best.end()),
                                      *std::max_element(best.begin(), best.end()));
    row.best_so_far_std = best_stats.std;
    row.pop_mean_energy_mean = mean_stats.mean;
    row.pop_mean_energy_std = mean_stats.std;
    row.selection_entropy_mean = detail::mean_std(entropy).mean;
    result.records.push_back(row);
  }
  return result;
}

/// Runs every configuration `runs` times and returns one aggregate per config,
/// in config order. Replicates run on a thread pool; results are stored by
/// (config, run) index so the output does not depend on scheduling.
inline std::vector<AggregateTrace> run_experiment(const ExperimentConfig& experiment,
                                                  std::vector<std::vector<RunTrace>>* traces_out = nullptr) {
  experiment.validate();
  const std::size_t configs = experiment.configs.size();
  const std::size_t runs = experiment.runs;
  std::vector<std::vector<RunTrace>> traces(configs, std::vector<RunTrace>(runs));

  std::atomic<std::size_t> next_job{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::optional<std::size_t> error_job;
  std::string error_message;

  auto worker = [&] {
    for (std::size_t job = next_job++; job < configs * runs && !failed; job = next_job++) {
      const std::size_t c = job / runs;
      const std::size_t r = job % runs;
      EngineConfig config = experiment.configs[c];
      config.seed = run_seed(experiment.master_seed, c, r);
      std::size_t generation = 0;
      try {
        const Engine engine(config);
        EngineState state = engine.init();
        while (state.t < config.generations) {
          generation = state.t + 1;
          state = engine.step(state);
        }
        traces[c][r] = engine.trace(state);
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        failed = true;
        // Report the lowest failing job so the message is reproducible.
        if (!error_job || job < *error_job) {
          error_job = job;
          error_message = "config " + std::to_string(c) + ", run " + std::to_string(r) +
                          ", generation " + std::to_string(generation) + ": " + e.what();
        }
      }
    }
  };

  std::size_t threads = experiment.threads != 0 ? experiment.threads
                                                : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, configs * runs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failed) {
    throw std::runtime_error("experiment failed at " + error_message);
  }

  std::vector<AggregateTrace> aggregates;
  aggregates.reserve(configs);
  for (std::size_t c = 0; c < configs; ++c) {
    aggregates.push_back(aggregate(experiment.configs[c], traces[c]));
  }
  if (traces_out != nullptr) *traces_out = std::move(traces);
  return aggregates;
}

}  // namespace tsallis_ea::harness
