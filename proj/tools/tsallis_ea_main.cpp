#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "tsallis_ea/harness/cli.hpp"
#include "tsallis_ea/harness/csv.hpp"
#include "tsallis_ea/harness/experiment.hpp"
#include "tsallis_ea/harness/svg.hpp"

namespace harness = tsallis_ea::harness;

int main(int argc, char** argv) {
  harness::ExperimentConfig experiment;
  try {
    experiment = harness::parse_cli(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const harness::HelpRequested& help) {
    std::cout << help.what();
    return 0;
  } catch (const tsallis_ea::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto aggregates = harness::run_experiment(experiment);
    for (const auto& path : harness::write_csv(aggregates, experiment.output_dir)) {
      std::cout << "wrote " << path.string() << "\n";
    }
    if (experiment.plot) {
      const auto path = experiment.output_dir /
                        (experiment.configs.front().objective + "_convergence.svg");
      harness::render_convergence_plot(aggregates, path);
      std::cout << "wrote " << path.string() << "\n";
    }
    std::cout << "final mean best-so-far after " << experiment.configs.front().generations
              << " generations, " << experiment.runs << " runs:\n";
    for (const auto& aggregate : aggregates) {
      std::printf("  %-28s %.6f (std %.6f)\n", aggregate.label.c_str(),
                  aggregate.final_best_so_far_mean(), aggregate.records.back().best_so_far_std);
    }
  } catch (const tsallis_ea::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
