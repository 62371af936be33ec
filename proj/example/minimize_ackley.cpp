// Single run of the generalized EA on the 15-variable Ackley function,
// printing the convergence trace every ten generations.

#include <cstdio>

#include "tsallis_ea/tsallis_ea.hpp"

int main() {
  tsallis_ea::EngineConfig config;
  config.objective = "ackley";
  config.scheme = tsallis_ea::SelectionScheme::tsallis;
  config.q0 = 1.5;
  config.seed = 42;

  const tsallis_ea::Engine engine(config);
  tsallis_ea::EngineState state = engine.init();
  while (state.t < config.generations) {
    state = engine.step(state);
    const auto& record = state.records.back();
    if (record.generation % 10 == 0 || record.generation == 1) {
      std::printf("gen %3zu  beta %9.3f  q %.4f  best %9.5f  mean %9.5f  S_q %.4f\n",
                  record.generation, record.beta, record.q, record.best_so_far,
                  record.mean_energy, record.selection_entropy);
    }
  }

  const auto trace = engine.trace(state);
  std::printf("best energy %.6f at x = (", trace.best_energy);
  for (std::size_t i = 0; i < trace.best_point.size(); ++i) {
    std::printf(i == 0 ? "%.4f" : ", %.4f", trace.best_point[i]);
  }
  std::printf(")\n");
}
