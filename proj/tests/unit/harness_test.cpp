#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tsallis_ea/harness/cli.hpp"
#include "tsallis_ea/harness/csv.hpp"
#include "tsallis_ea/harness/experiment.hpp"
#include "tsallis_ea/harness/svg.hpp"

namespace tsallis_ea::harness {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tsallis_ea_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small_experiment(std::size_t runs = 3) {
  ExperimentConfig experiment;
  for (auto scheme : {SelectionScheme::tsallis, SelectionScheme::boltzmann, SelectionScheme::proportionate}) {
    EngineConfig config;
    config.objective = "griewangk";
    config.population_size = 30;
    config.generations = 12;
    config.scheme = scheme;
    if (scheme == SelectionScheme::tsallis) config.q0 = 1.01;
    experiment.configs.push_back(config);
  }
  experiment.runs = runs;
  experiment.master_seed = 99;
  experiment.threads = 2;
  return experiment;
}

TEST(RunSeed, CollisionFree) {
  std::set<std::uint64_t> seeds;
  for (std::size_t c = 0; c < 50; ++c) {
    for (std::size_t r = 0; r < 200; ++r) seeds.insert(run_seed(7, c, r));
  }
  EXPECT_EQ(seeds.size(), 50U * 200U);
}

TEST(Aggregate, SingleRunHasZeroSpread) {
  EngineConfig config;
  config.objective = "ackley";
  config.population_size = 20;
  config.generations = 10;
  config.seed = 4;
  const std::vector<RunTrace> traces{run(config)};
  const AggregateTrace agg = aggregate(config, traces);
  ASSERT_EQ(agg.records.size(), 10U);
  for (std::size_t g = 0; g < 10; ++g) {
    EXPECT_EQ(agg.records[g].best_so_far_mean, traces[0].records[g].best_so_far);
    EXPECT_EQ(agg.records[g].pop_mean_energy_mean, traces[0].records[g].mean_energy);
    EXPECT_EQ(agg.records[g].best_so_far_std, 0.0);
    EXPECT_EQ(agg.records[g].pop_mean_energy_std, 0.0);
  }
}

TEST(Aggregate, PopulationStandardDeviation) {
  EngineConfig config;
  std::vector<RunTrace> traces(2);
  traces[0].records = {GenerationRecord{1, 200.0, 1.0, 1.0, 2.0, 1.0, 0.5}};
  traces[1].records = {GenerationRecord{1, 200.0, 1.0, 3.0, 6.0, 3.0, 1.5}};
  const AggregateTrace agg = aggregate(config, traces);
  EXPECT_EQ(agg.records[0].best_so_far_mean, 2.0);
  EXPECT_EQ(agg.records[0].best_so_far_std, 1.0);
  EXPECT_EQ(agg.records[0].pop_mean_energy_mean, 4.0);
  EXPECT_EQ(agg.records[0].pop_mean_energy_std, 2.0);
  EXPECT_EQ(agg.records[0].selection_entropy_mean, 1.0);
}

TEST(RunExperiment, MeansLieWithinRunRangeAndAreDeterministic) {
  const ExperimentConfig experiment = small_experiment(5);
  std::vector<std::vector<RunTrace>> traces;
  const auto aggregates = run_experiment(experiment, &traces);
  ASSERT_EQ(aggregates.size(), 3U);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_EQ(aggregates[c].runs, 5U);
    for (std::size_t g = 0; g < 12; ++g) {
      double lo = INFINITY;
      double hi = -INFINITY;
      for (const RunTrace& t : traces[c]) {
        lo = std::min(lo, t.records[g].best_so_far);
        hi = std::max(hi, t.records[g].best_so_far);
      }
      EXPECT_GE(aggregates[c].records[g].best_so_far_mean, lo);
      EXPECT_LE(aggregates[c].records[g].best_so_far_mean, hi);
    }
  }
  ExperimentConfig serial = experiment;
  serial.threads = 1;
  EXPECT_EQ(run_experiment(serial)[0].records, aggregates[0].records);
  EXPECT_EQ(run_experiment(experiment)[2].records, aggregates[2].records);
}

TEST(RunExperiment, RejectsIncomparableConfigs) {
  ExperimentConfig experiment = small_experiment(1);
  experiment.configs[2].objective = "ackley";
  EXPECT_THROW(run_experiment(experiment), UsageError);
  experiment = small_experiment(1);
  experiment.runs = 0;
  EXPECT_THROW(run_experiment(experiment), UsageError);
}

TEST(WriteCsv, LayoutAndDeterminism) {
  const fs::path dir = scratch_dir("csv");
  const auto aggregates = run_experiment(small_experiment());
  const auto paths = write_csv(aggregates, dir);
  ASSERT_EQ(paths.size(), 4U);
  EXPECT_EQ(paths[0].filename(), "griewangk_tsallis_q0-1.01.csv");
  EXPECT_EQ(paths[1].filename(), "griewangk_boltzmann.csv");
  EXPECT_EQ(paths[2].filename(), "griewangk_proportionate.csv");
  EXPECT_EQ(paths[3].filename(), "griewangk_combined.csv");

  const std::string text = slurp(paths[1]);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line,
            "generation,beta,q,best_so_far_mean,best_so_far_std,pop_mean_energy_mean,"
            "pop_mean_energy_std,selection_entropy_mean");
  std::size_t expected_generation = 1;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.substr(0, line.find(',')), std::to_string(expected_generation));
    EXPECT_EQ(count(line, ","), 7U);
    ++expected_generation;
  }
  EXPECT_EQ(expected_generation, 13U);
  EXPECT_EQ(count(slurp(paths[3]), "\n"), 1U + 3U * 12U);

  const fs::path again = scratch_dir("csv_again");
  const auto second = write_csv(run_experiment(small_experiment()), again);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    EXPECT_EQ(slurp(paths[i]), slurp(second[i]));
  }
}

TEST(WriteCsv, SeventeenSignificantDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(200.0), "200");
  EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(WriteCsv, UnwritablePathNamesThePath) {
  const fs::path blocker = scratch_dir("blocker");
  fs::create_directories(blocker.parent_path());
  std::ofstream(blocker) << "file, not a directory";
  const auto aggregates = run_experiment(small_experiment(1));
  try {
    write_csv(aggregates, blocker / "sub");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(blocker.string()), std::string::npos);
  }
  fs::remove(blocker);
}

TEST(ConvergencePlot, SeriesAndLegend) {
  const auto aggregates = run_experiment(small_experiment());
  const std::string svg = render_convergence_svg(aggregates);
  EXPECT_EQ(count(svg, "<polyline class=\"series\""), 3U);
  EXPECT_EQ(count(svg, "class=\"legend-entry\""), 3U);
  EXPECT_NE(svg.find("tsallis (q0 = 1.01)"), std::string::npos);
  EXPECT_NE(svg.find(">boltzmann<"), std::string::npos);
  EXPECT_NE(svg.find(">proportionate<"), std::string::npos);
  EXPECT_EQ(svg, render_convergence_svg(run_experiment(small_experiment())));

  const std::vector<AggregateTrace> one(aggregates.begin(), aggregates.begin() + 1);
  const std::string single = render_convergence_svg(one);
  EXPECT_EQ(count(single, "<polyline class=\"series\""), 1U);

  const fs::path dir = scratch_dir("svg");
  render_convergence_plot(aggregates, dir / "plot.svg");
  EXPECT_EQ(slurp(dir / "plot.svg"), svg);
}

TEST(ConvergencePlot, SingleGeneration) {
  ExperimentConfig experiment = small_experiment(1);
  for (auto& c : experiment.configs) c.generations = 1;
  const std::string svg = render_convergence_svg(run_experiment(experiment));
  EXPECT_EQ(svg.find("nan"), std::string::npos);
}

TEST(ParseCli, TsallisOnAckley) {
  const auto experiment = parse_cli({"--function", "ackley", "--selection", "tsallis", "--q0", "1.5"});
  ASSERT_EQ(experiment.configs.size(), 1U);
  const EngineConfig& c = experiment.configs[0];
  EXPECT_EQ(c.objective, "ackley");
  EXPECT_EQ(c.search_space().lo(), -30.0);
  EXPECT_EQ(c.search_space().hi(), 30.0);
  EXPECT_EQ(c.scheme, SelectionScheme::tsallis);
  EXPECT_EQ(c.q0, 1.5);
  EXPECT_EQ(c.population_size, 350U);
  EXPECT_EQ(c.generations, 100U);
  EXPECT_EQ(c.variables, 15U);
  EXPECT_EQ(c.bits_per_var, 5U);
  EXPECT_EQ(c.beta0, 200.0);
  EXPECT_EQ(c.alpha, 1.01);
  EXPECT_EQ(c.variation.p_crossover, 0.8);
  EXPECT_EQ(c.variation.p_bit_mutation, 0.02);
  EXPECT_EQ(c.energy_shift, EnergyShift::on);
  EXPECT_EQ(experiment.runs, 20U);
  EXPECT_EQ(experiment.master_seed, kDefaultMasterSeed);
}

TEST(ParseCli, UsageErrors) {
  EXPECT_THROW(parse_cli({}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley", "--selection", "boltzmann", "--q0", "2"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley", "--selection", "tsallis"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley", "--selection", "boltzmann", "--bogus"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley", "--selection", "boltzmann", "--beta0", "abc"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley", "--selection", "tsallis", "--q0", "1.5x"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "sphere", "--selection", "boltzmann"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley", "--selection", "boltzmann", "--compare", "tsallis"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley", "--compare", "boltzmann,boltzmann"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley", "--selection", "boltzmann", "--pop-size", "1"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley", "--selection", "boltzmann", "--alpha", "0.9"}), UsageError);
  EXPECT_THROW(parse_cli({"--function", "ackley", "--selection", "boltzmann", "--constant-q"}), UsageError);
  try {
    parse_cli({});
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("--pop-size"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("350"), std::string::npos);
  }
  EXPECT_THROW(parse_cli({"--help"}), HelpRequested);
}

TEST(ParseCli, CompareBuildsOneConfigPerScheme) {
  const auto experiment = parse_cli({"--function", "rastrigin", "--compare", "tsallis,boltzmann,proportionate",
                                     "--q0", "2", "--runs", "4", "--seed", "11", "--out", "x", "--plot",
                                     "--no-energy-shift", "--pbit", "0.05"});
  ASSERT_EQ(experiment.configs.size(), 3U);
  EXPECT_EQ(experiment.configs[0].scheme, SelectionScheme::tsallis);
  EXPECT_EQ(experiment.configs[1].scheme, SelectionScheme::boltzmann);
  EXPECT_EQ(experiment.configs[2].scheme, SelectionScheme::proportionate);
  EXPECT_FALSE(experiment.configs[1].q0.has_value());
  EXPECT_EQ(experiment.runs, 4U);
  EXPECT_EQ(experiment.master_seed, 11U);
  EXPECT_EQ(experiment.output_dir, fs::path("x"));
  EXPECT_TRUE(experiment.plot);
  EXPECT_EQ(experiment.configs[0].energy_shift, EnergyShift::off);
  EXPECT_EQ(experiment.configs[2].variation.p_bit_mutation, 0.05);
}

TEST(ParseCli, QSweep) {
  const auto experiment = parse_cli({"--function", "ackley", "--selection", "tsallis", "--q0", "3,2,1.5,1.01"});
  ASSERT_EQ(experiment.configs.size(), 4U);
  EXPECT_EQ(experiment.configs[3].q0, 1.01);
}

TEST(ParseCli, ConfigFilePrecedence) {
  const fs::path dir = scratch_dir("config");
  fs::create_directories(dir);
  const fs::path file = dir / "run.conf";
  std::ofstream(file) << "# benchmark\nfunction = griewangk\nselection = tsallis\nq0 = 1.01\n"
                         "pop-size = 120\nruns = 3\nplot = true\n";
  auto experiment = parse_cli({"--config", file.string(), "--pop-size", "80"});
  ASSERT_EQ(experiment.configs.size(), 1U);
  EXPECT_EQ(experiment.configs[0].objective, "griewangk");
  EXPECT_EQ(experiment.configs[0].population_size, 80U);  // flag beats file
  EXPECT_EQ(experiment.runs, 3U);                          // file beats default
  EXPECT_EQ(experiment.configs[0].generations, 100U);      // default
  EXPECT_TRUE(experiment.plot);

  std::ofstream(file) << "colour = blue\n";
  EXPECT_THROW(parse_cli({"--config", file.string()}), UsageError);
  EXPECT_THROW(parse_cli({"--config", (dir / "missing.conf").string()}), UsageError);
}

}  // namespace
}  // namespace tsallis_ea::harness
