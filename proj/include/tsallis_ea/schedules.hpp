#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tsallis_ea/error.hpp"

namespace tsallis_ea {

struct ScheduleConfig {
  double beta0 = 200.0;
  double alpha = 1.01;
  double q0 = 1.0;
  std::size_t horizon = 100;
  // Hold q at q0 instead of decaying it linearly to 1.
  bool constant_q = false;

  void validate() const {
    detail::require(std::isfinite(beta0) && beta0 > 0.0, "beta0 must be finite and positive");
    detail::require(std::isfinite(alpha) && alpha > 1.0, "alpha must be finite and greater than 1");
    detail::require(std::isfinite(q0), "q0 must be finite");
    detail::require(horizon >= 1, "schedule horizon must be at least 1");
  }
};

namespace detail {

// One step of Neumaier-compensated forward summation of i^-alpha.
struct CauchyPartialSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add_term(std::size_t i, double alpha) {
    const double term = std::pow(static_cast<double>(i), -alpha);
    const double next = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
  }

  double value() const { return sum + compensation; }
};

}  // namespace detail

/// Cauchy annealing schedule beta_t = beta0 * sum_{i=1..t} i^-alpha, t >= 1.
///
/// Direct forward summation with Neumaier compensation; O(t) per call.
inline double cauchy_beta(std::size_t t, const ScheduleConfig& config) {
  config.validate();
  detail::require(t >= 1, "the annealing schedule starts at t = 1");
  detail::CauchyPartialSum partial;
  for (std::size_t i = 1; i <= t; ++i) partial.add_term(i, config.alpha);
  return config.beta0 * partial.value();
}

/// Cached partial sums of the Cauchy schedule. Runs the same recurrence as
/// cauchy_beta, so beta(t) == cauchy_beta(t, config) bit for bit, but each new
/// t costs one term.
class CauchySchedule {
 public:
  explicit CauchySchedule(const ScheduleConfig& config) : beta0_(config.beta0), alpha_(config.alpha) {
    config.validate();
  }

  double beta(std::size_t t) {
    detail::require(t >= 1, "the annealing schedule starts at t = 1");
    while (cache_.size() < t) {
      partial_.add_term(cache_.size() + 1, alpha_);
      cache_.push_back(beta0_ * partial_.value());
    }
    return cache_[t - 1];
  }

 private:
  double beta0_;
  double alpha_;
  detail::CauchyPartialSum partial_;
  std::vector<double> cache_;
};

/// q_t = q0 + (1 - q0) t / (T - 1) for t in [0, T-1]; the last generation gets
/// exactly 1. With T = 1 the single generation uses q0.
inline double linear_q(std::size_t t, const ScheduleConfig& config) {
  config.validate();
  const std::size_t horizon = config.horizon;
  detail::require(t < horizon, "generation " + std::to_string(t) + " outside the q schedule [0, " +
                                   std::to_string(horizon - 1) + "]");
  if (horizon == 1) return config.q0;
  if (t == horizon - 1) return 1.0;
  const double fraction = static_cast<double>(t) / static_cast<double>(horizon - 1);
  return config.q0 + (1.0 - config.q0) * fraction;
}

// q used at generation t (0-based) under the configured mode.
inline double scheduled_q(std::size_t t, const ScheduleConfig& config) {
  if (config.constant_q) {
    config.validate();
    detail::require(t < config.horizon, "generation outside the q schedule");
    return config.q0;
  }
  return linear_q(t, config);
}

}  // namespace tsallis_ea
